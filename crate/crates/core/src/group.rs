//! Finite groups given by a full multiplication table.
//!
//! Every group, however it was presented (permutations, a semidirect product
//! `H ⋉ A`, a quotient, a subgroup), is materialised as a Cayley table over
//! element indices `0..N` with the identity at index `0`. Tables are capped at
//! [`TABLE_CAP`] elements, which covers `A_7` and the order-6480 group of the
//! builder catalogue while keeping structural queries simple array lookups.
//!
//! Conjugation is the right action `x^g = g⁻¹xg`, and permutations compose
//! left to right: `i^{gh} = (i^g)^h`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{AbElement, AbHom, AbelianGroup};
use crate::arith::{factorize, lcm, prime_divisors};
use crate::error::{Error, Result};

/// Largest group order that will be materialised as a table.
pub const TABLE_CAP: usize = 8192;

/// Element index inside a [`FiniteGroup`].
pub type Elem = u32;

/// A subgroup, stored as its sorted element set plus a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elems: Vec<Elem>,
    mask: Vec<bool>,
    gens: Vec<Elem>,
}

/// The name used for subgroup handles in the public interface.
pub type SubgroupHandle = Subgroup;

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x as usize]
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }
}

/// Conjugacy classes with representatives, sizes and the class of every element.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub reps: Vec<Elem>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<Elem>>,
    pub class_of: Vec<u32>,
    /// Order of the class representatives.
    pub orders: Vec<u32>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Outcome of the quasi-Frobenius test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFrobenius {
    pub holds: bool,
    pub reason: String,
}

pub struct FiniteGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    gens: Vec<Elem>,
    labels: Arc<Vec<String>>,
    name: String,
    classes: OnceLock<Arc<ClassData>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        let classes = OnceLock::new();
        if let Some(c) = self.classes.get() {
            let _ = classes.set(c.clone());
        }
        FiniteGroup {
            n: self.n,
            table: self.table.clone(),
            inv: self.inv.clone(),
            gens: self.gens.clone(),
            labels: self.labels.clone(),
            name: self.name.clone(),
            classes,
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

/// Data for `G = H ⋉ A`: an abelian normal subgroup `A`, a complement `H`,
/// and the right action `a ↦ a^h` of each generator of `H` (in the order of
/// [`FiniteGroup::generators`]).
#[derive(Clone, Debug)]
pub struct SemidirectSpec {
    pub a: AbelianGroup,
    pub h: FiniteGroup,
    pub action: Vec<AbHom>,
}

/// A semidirect product together with the embedded copies of `A` and `H`.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: FiniteGroup,
    pub a: Subgroup,
    pub h: Subgroup,
    /// `a_index[i]` is the group element of the `i`-th element of `A` in
    /// mixed-radix order (see [`AbelianGroup::element_at`]).
    pub a_index: Vec<Elem>,
    /// Group element of each element of the complement, by `H`-index.
    pub h_index: Vec<Elem>,
}

/// An abelian subgroup identified with an explicit `C_{d_1} × … × C_{d_r}`.
#[derive(Clone, Debug)]
pub struct AbelianView {
    pub group: AbelianGroup,
    /// Group elements realising the standard generators.
    pub basis: Vec<Elem>,
    coords: HashMap<Elem, AbElement>,
    by_index: Vec<Elem>,
}

impl AbelianView {
    pub fn coords(&self, x: Elem) -> Option<&AbElement> {
        self.coords.get(&x)
    }

    /// The group element with the given coordinate vector.
    pub fn element(&self, a: &AbElement) -> Elem {
        self.by_index[self.group.index_of(a)]
    }
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn cycle_string(perm: &[u8]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cyc = vec![start + 1];
        seen[start] = true;
        let mut i = perm[start] as usize;
        while i != start {
            seen[i] = true;
            cyc.push(i + 1);
            i = perm[i] as usize;
        }
        let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", parts.join(",")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

impl FiniteGroup {
    fn check_cap(n: usize) -> Result<()> {
        if n > TABLE_CAP {
            return Err(Error::CapExceeded {
                what: "group order",
                value: n,
                cap: TABLE_CAP,
            });
        }
        Ok(())
    }

    fn assemble(n: usize, table: Vec<u16>, gens: Vec<Elem>, labels: Vec<String>, name: String) -> Self {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row.iter().position(|&x| x == 0).expect("latin row contains the identity");
            inv[a] = b as u16;
        }
        let mut gens: Vec<Elem> = gens.into_iter().filter(|&g| g != 0).collect();
        gens.dedup();
        FiniteGroup {
            n,
            table,
            inv,
            gens,
            labels: Arc::new(labels),
            name,
            classes: OnceLock::new(),
        }
    }

    /// Builds a group from a multiplication table with identity at index 0.
    /// The Latin-square property and associativity are verified exhaustively
    /// for `N ≤ 512` (associativity on a seeded sample above 64 elements) and
    /// by sampling rows otherwise.
    pub fn from_table(n: usize, table: Vec<u32>, name: &str) -> Result<Self> {
        Self::check_cap(n)?;
        if n == 0 || table.len() != n * n {
            return Err(Error::construction("table size does not match the order"));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::construction("table entry out of range"));
        }
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(Error::construction("index 0 is not the identity"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let rows: Vec<usize> = if n <= 512 {
            (0..n).collect()
        } else {
            (0..64).map(|_| rng.gen_range(0..n)).collect()
        };
        let mut seen = vec![usize::MAX; n];
        for &r in &rows {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] == r {
                    return Err(Error::construction(format!("row {r} of the table repeats an entry")));
                }
                seen[v] = r;
            }
        }
        for &c in &rows {
            let mut seen = vec![false; n];
            for r in 0..n {
                let v = table[r * n + c] as usize;
                if seen[v] {
                    return Err(Error::construction(format!("column {c} of the table repeats an entry")));
                }
                seen[v] = true;
            }
        }
        let trials = if n <= 64 { n * n * n } else { 20_000 };
        for t in 0..trials {
            let (a, b, c) = if n <= 64 {
                (t / (n * n), (t / n) % n, t % n)
            } else {
                (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
            };
            let ab = table[a * n + b] as usize;
            let bc = table[b * n + c] as usize;
            if table[ab * n + c] != table[a * n + bc] {
                return Err(Error::construction("multiplication is not associative"));
            }
        }
        let table16: Vec<u16> = table.into_iter().map(|x| x as u16).collect();
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let mut g = Self::assemble(n, table16, Vec::new(), labels, name.to_string());
        g.gens = g.small_generating_set();
        Ok(g)
    }

    /// The group generated by permutations of `{0, …, degree-1}`, each given
    /// as its image list.
    pub fn from_permutations(degree: usize, gens: &[Vec<u8>], name: &str) -> Result<Self> {
        for g in gens {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted.iter().enumerate().any(|(i, &v)| v as usize != i) {
                return Err(Error::construction("generator is not a permutation of the stated degree"));
            }
        }
        let identity: Vec<u8> = (0..degree as u8).collect();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<Vec<u8>, u32> = HashMap::new();
        index.insert(identity, 0);
        let compose = |a: &[u8], b: &[u8]| -> Vec<u8> { a.iter().map(|&i| b[i as usize]).collect() };
        // Breadth-first closure; `bfs` records how each element was reached.
        let mut bfs: Vec<(u32, u32, usize)> = Vec::new();
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            for (gi, g) in gens.iter().enumerate() {
                let y = compose(&x, g);
                if !index.contains_key(&y) {
                    let id = elems.len() as u32;
                    Self::check_cap(elems.len() + 1)?;
                    index.insert(y.clone(), id);
                    elems.push(y);
                    bfs.push((id, head as u32, gi));
                }
            }
            head += 1;
        }
        let n = elems.len();
        let gen_ids: Vec<u32> = gens.iter().map(|g| index[g]).collect();
        // right[x][gi] = x * gens[gi]
        let right: Vec<Vec<u32>> = elems
            .iter()
            .map(|x| gens.iter().map(|g| index[&compose(x, g)]).collect())
            .collect();
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u16;
            for &(b, parent, gi) in &bfs {
                row[b as usize] = right[row[parent as usize] as usize][gi] as u16;
            }
        }
        let labels = elems.iter().map(|p| cycle_string(p)).collect();
        Ok(Self::assemble(n, table, gen_ids, labels, name.to_string()))
    }

    /// `H ⋉ A` with product `(h₁, a₁)(h₂, a₂) = (h₁h₂, a₁^{h₂} + a₂)`, where
    /// `(h, a)` stands for the element `h·a`. With this convention
    /// `h⁻¹ a h = a^h`, so the supplied maps are the conjugation action.
    pub fn semidirect(spec: &SemidirectSpec, name: &str) -> Result<Semidirect> {
        let h = &spec.h;
        let a = &spec.a;
        let na = a.order() as usize;
        let nh = h.order();
        Self::check_cap(na * nh)?;
        if spec.action.len() != h.gens.len() {
            return Err(Error::construction(format!(
                "complement has {} generators but {} action matrices were given",
                h.gens.len(),
                spec.action.len()
            )));
        }
        for (i, m) in spec.action.iter().enumerate() {
            if m.source() != a || !m.is_automorphism() {
                return Err(Error::construction(format!("action of generator {i} is not an automorphism of {a}")));
            }
        }
        // Action of every element of H, via a^{xg} = (a^x)^g.
        let mut rho: Vec<Option<AbHom>> = vec![None; nh];
        rho[0] = Some(AbHom::identity(a));
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let rx = rho[x as usize].clone().unwrap();
            for (gi, &g) in h.gens.iter().enumerate() {
                let y = h.mul(x, g);
                if rho[y as usize].is_none() {
                    rho[y as usize] = Some(spec.action[gi].compose(&rx)?);
                    queue.push_back(y);
                }
            }
        }
        let rho: Vec<AbHom> = rho.into_iter().map(|r| r.expect("generators generate H")).collect();
        for h1 in 0..nh as u32 {
            for h2 in 0..nh as u32 {
                let lhs = &rho[h.mul(h1, h2) as usize];
                let rhs = rho[h2 as usize].compose(&rho[h1 as usize])?;
                if *lhs != rhs {
                    return Err(Error::construction(
                        "action is not a homomorphism: a^(h1 h2) differs from (a^h1)^h2",
                    ));
                }
            }
        }
        let a_elems: Vec<AbElement> = a.elements().collect();
        let act: Vec<Vec<u32>> = rho
            .iter()
            .map(|r| a_elems.iter().map(|e| a.index_of(&r.apply(e)) as u32).collect())
            .collect();
        let factors: Vec<usize> = a.factors().iter().map(|&d| d as usize).collect();
        let add = |x: usize, y: usize| -> usize {
            let (mut x, mut y) = (x, y);
            let mut out = 0;
            let mut place = 1;
            for &d in &factors {
                out += ((x % d + y % d) % d) * place;
                place *= d;
                x /= d;
                y /= d;
            }
            out
        };
        let n = na * nh;
        let mut table = vec![0u16; n * n];
        for g1 in 0..n {
            let (h1, a1) = (g1 / na, g1 % na);
            for g2 in 0..n {
                let (h2, a2) = (g2 / na, g2 % na);
                let hh = h.mul(h1 as u32, h2 as u32) as usize;
                let aa = add(act[h2][a1] as usize, a2);
                table[g1 * n + g2] = (hh * na + aa) as u16;
            }
        }
        let mut gens: Vec<Elem> = h.gens.iter().map(|&g| g * na as u32).collect();
        for j in 0..a.num_factors() {
            gens.push(a.index_of(&a.generator(j)) as u32);
        }
        let labels = (0..n)
            .map(|g| {
                let (hi, ai) = (g / na, g % na);
                format!("({};{})", h.label(hi as u32), a.format_element(&a_elems[ai]))
            })
            .collect();
        let group = Self::assemble(n, table, gens, labels, name.to_string());
        let a_index: Vec<Elem> = (0..na as u32).collect();
        let h_index: Vec<Elem> = (0..nh as u32).map(|x| x * na as u32).collect();
        let a_sub = group.subgroup_from_elements(&a_index);
        let h_sub = group.subgroup_from_elements(&h_index);
        Ok(Semidirect {
            group,
            a: a_sub,
            h: h_sub,
            a_index,
            h_index,
        })
    }

    pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup, name: &str) -> Result<Self> {
        let (n1, n2) = (g1.n, g2.n);
        let n = n1 * n2;
        Self::check_cap(n)?;
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            let (x1, x2) = (x / n2, x % n2);
            for y in 0..n {
                let (y1, y2) = (y / n2, y % n2);
                let z = g1.mul(x1 as u32, y1 as u32) as usize * n2 + g2.mul(x2 as u32, y2 as u32) as usize;
                table[x * n + y] = z as u16;
            }
        }
        let mut gens: Vec<Elem> = g1.gens.iter().map(|&g| g * n2 as u32).collect();
        gens.extend(g2.gens.iter().copied());
        let labels = (0..n)
            .map(|x| format!("<{},{}>", g1.label((x / n2) as u32), g2.label((x % n2) as u32)))
            .collect();
        Ok(Self::assemble(n, table, gens, labels, name.to_string()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize] as Elem
    }

    /// `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `[x, y] = x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: Elem, k: u64) -> Elem {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> u32 {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        let cls = self.classes();
        cls.orders.iter().fold(1, |e, &o| lcm(e, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    fn small_generating_set(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut sub = self.closure(&[]);
        for x in 1..self.n as Elem {
            if !sub.contains(x) {
                gens.push(x);
                sub = self.closure(&gens);
            }
            if sub.order() == self.n {
                break;
            }
        }
        gens
    }

    // ----- subgroups ---------------------------------------------------

    /// `⟨gens⟩`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.n];
        let mut elems = vec![0];
        mask[0] = true;
        let mut gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            for &g in &gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    elems.push(y);
                }
            }
            head += 1;
        }
        elems.sort_unstable();
        Subgroup { elems, mask, gens }
    }

    /// Wraps a set already known to be a subgroup.
    pub fn subgroup_from_elements(&self, elems: &[Elem]) -> Subgroup {
        let mut mask = vec![false; self.n];
        for &x in elems {
            mask[x as usize] = true;
        }
        let mut sorted: Vec<Elem> = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        // Greedy generating set.
        let mut gens = Vec::new();
        let mut cur = self.closure(&[]);
        for &x in &sorted {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        debug_assert_eq!(cur.elems, sorted, "set is not a subgroup");
        Subgroup {
            elems: sorted,
            mask,
            gens,
        }
    }

    /// Checks closure under multiplication and returns the subgroup.
    pub fn try_subgroup(&self, elems: &[Elem]) -> Result<Subgroup> {
        let sub = self.closure(elems);
        if sub.order() != {
            let mut s = elems.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        } {
            return Err(Error::domain("element set is not closed under multiplication"));
        }
        Ok(sub)
    }

    pub fn whole(&self) -> Subgroup {
        let gens = self.gens.clone();
        Subgroup {
            elems: (0..self.n as Elem).collect(),
            mask: vec![true; self.n],
            gens,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[])
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().copied());
        self.closure(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = a.elems.iter().copied().filter(|&x| b.contains(x)).collect();
        self.subgroup_from_elements(&elems)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&x| self.gens.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// The smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[Elem]) -> Subgroup {
        let mut h = self.closure(set);
        loop {
            let extra: Vec<Elem> = h
                .gens
                .iter()
                .flat_map(|&x| self.gens.iter().map(move |&g| (x, g)))
                .map(|(x, g)| self.conj(x, g))
                .filter(|&y| !h.contains(y))
                .collect();
            if extra.is_empty() {
                return h;
            }
            let mut gens = h.gens.clone();
            gens.extend(extra);
            h = self.closure(&gens);
        }
    }

    /// `[H, K]` for normal subgroups `H`, `K`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let comms: Vec<Elem> = h
            .gens
            .iter()
            .flat_map(|&x| k.gens.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    pub fn centralizer_of_element(&self, x: Elem) -> Subgroup {
        let elems: Vec<Elem> = (0..self.n as Elem)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// `C_G(S)` for a set `S` (typically a generating set).
    pub fn centralizer(&self, set: &[Elem]) -> Subgroup {
        let elems: Vec<Elem> = (0..self.n as Elem)
            .filter(|&g| set.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.subgroup_from_elements(&elems)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<Elem> = (0..self.n as Elem)
            .filter(|&g| h.gens.iter().all(|&x| h.contains(self.conj(x, g))))
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// Right coset representatives of `h`, starting with the identity.
    pub fn right_transversal(&self, h: &Subgroup) -> Vec<Elem> {
        let mut seen = vec![false; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n as Elem {
            if seen[g as usize] {
                continue;
            }
            reps.push(g);
            for &x in &h.elems {
                seen[self.mul(x, g) as usize] = true;
            }
        }
        reps
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let gens: Vec<Elem> = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        self.closure(&gens)
    }

    // ----- classes -----------------------------------------------------

    pub fn classes(&self) -> Arc<ClassData> {
        self.classes
            .get_or_init(|| Arc::new(self.compute_classes()))
            .clone()
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.n;
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for x in 0..n as Elem {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            class_of[x as usize] = id;
            let mut orbit = vec![x];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                for &g in &self.gens {
                    let z = self.conj(y, g);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        orbit.push(z);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            reps.push(x);
            members.push(orbit);
        }
        let sizes = members.iter().map(|m| m.len()).collect();
        let orders = reps.iter().map(|&r| self.element_order(r)).collect();
        ClassData {
            reps,
            sizes,
            members,
            class_of,
            orders,
        }
    }

    /// Conjugacy classes (alias of [`FiniteGroup::classes`]).
    pub fn conjugacy_classes(&self) -> Arc<ClassData> {
        self.classes()
    }

    pub fn center(&self) -> Subgroup {
        let cls = self.classes();
        let elems: Vec<Elem> = cls
            .members
            .iter()
            .filter(|m| m.len() == 1)
            .map(|m| m[0])
            .collect();
        self.subgroup_from_elements(&elems)
    }

    // ----- Sylow theory and the Fitting subgroup ------------------------

    /// A Sylow `p`-subgroup, grown deterministically: at each step the first
    /// element (in index order) that normalises the current `p`-subgroup `P`
    /// and has its `p`-th power in `P` is adjoined. Such an element exists
    /// until `P` is Sylow, because `p` divides `|N_G(P) : P|` for every
    /// non-Sylow `p`-subgroup.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let target = p_part(self.n as u64, p) as usize;
        let mut sub = self.trivial_subgroup();
        while sub.order() < target {
            let g = (1..self.n as Elem)
                .find(|&g| {
                    !sub.contains(g)
                        && sub.contains(self.pow(g, p))
                        && sub.gens.iter().all(|&x| sub.contains(self.conj(x, g)))
                })
                .expect("a p-element normalising a non-Sylow p-subgroup exists");
            let mut gens = sub.gens.clone();
            gens.push(g);
            sub = self.closure(&gens);
        }
        sub
    }

    /// `O_p(G)`: the elements whose whole conjugacy class lies in a Sylow
    /// `p`-subgroup (the intersection of all Sylow `p`-subgroups).
    pub fn o_p(&self, p: u64) -> Subgroup {
        let syl = self.sylow(p);
        let cls = self.classes();
        let elems: Vec<Elem> = cls
            .members
            .iter()
            .filter(|m| m.iter().all(|&x| syl.contains(x)))
            .flat_map(|m| m.iter().copied())
            .collect();
        self.subgroup_from_elements(&elems)
    }

    /// The normal `p`-complement: the `p'`-elements, when they form a
    /// subgroup of index `|G|_p`.
    pub fn normal_p_complement(&self, p: u64) -> Option<Subgroup> {
        let elems: Vec<Elem> = (0..self.n as Elem)
            .filter(|&x| !(self.element_order(x) as u64).is_multiple_of(p))
            .collect();
        let sub = self.closure(&elems);
        (sub.order() == elems.len() && sub.order() as u64 * p_part(self.n as u64, p) == self.n as u64)
            .then_some(sub)
    }

    /// Elements of order coprime to every prime in `primes`, if they form a
    /// normal subgroup whose index is a product of those primes.
    pub fn normal_hall_complement(&self, primes: &[u64]) -> Option<Subgroup> {
        let elems: Vec<Elem> = (0..self.n as Elem)
            .filter(|&x| primes.iter().all(|&p| !(self.element_order(x) as u64).is_multiple_of(p)))
            .collect();
        let sub = self.closure(&elems);
        let pi_part: u64 = primes.iter().map(|&p| p_part(self.n as u64, p)).product();
        (sub.order() == elems.len() && sub.order() as u64 * pi_part == self.n as u64).then_some(sub)
    }

    pub fn fitting(&self) -> Subgroup {
        let mut gens = Vec::new();
        for p in prime_divisors(self.n as u64) {
            gens.extend(self.o_p(p).gens);
        }
        self.closure(&gens)
    }

    /// Every Sylow subgroup is abelian.
    pub fn is_a_group(&self) -> bool {
        prime_divisors(self.n as u64).into_iter().all(|p| {
            let s = self.sylow(p);
            s.gens
                .iter()
                .all(|&a| s.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
        })
    }

    pub fn is_nilpotent(&self) -> bool {
        self.fitting().order() == self.n
    }

    /// `γ_1 = G, γ_{i+1} = [γ_i, G]`, down to the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap(), &g);
            if next.order() == series.last().unwrap().order() {
                return series;
            }
            let done = next.order() == 1;
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn nilpotency_class(&self) -> Result<usize> {
        let series = self.lower_central_series();
        if series.last().unwrap().order() != 1 {
            return Err(Error::precondition(format!("{} is not nilpotent", self.name)));
        }
        Ok(series.len() - 1)
    }

    /// Nilpotency class of a subgroup.
    pub fn subgroup_class(&self, h: &Subgroup) -> Result<usize> {
        let (sub, _) = self.subgroup_as_group(h, "subgroup");
        sub.nilpotency_class()
    }

    // ----- derived groups ------------------------------------------------

    /// `G/N` with the projection map.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        if !self.is_normal(nsub) {
            return Err(Error::domain("quotient by a subgroup that is not normal"));
        }
        let mut id = vec![u32::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n as Elem {
            if id[g as usize] != u32::MAX {
                continue;
            }
            let k = reps.len() as u32;
            reps.push(g);
            for &m in &nsub.elems {
                id[self.mul(g, m) as usize] = k;
            }
        }
        let q = reps.len();
        let mut table = vec![0u16; q * q];
        for i in 0..q {
            for j in 0..q {
                table[i * q + j] = id[self.mul(reps[i], reps[j]) as usize] as u16;
            }
        }
        let gens: Vec<Elem> = self.gens.iter().map(|&g| id[g as usize]).collect();
        let labels = reps.iter().map(|&r| format!("{}N", self.label(r))).collect();
        let group = Self::assemble(q, table, gens, labels, format!("{}/N", self.name));
        Ok((group, id))
    }

    /// A subgroup as a group in its own right, with the embedding.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: &str) -> (FiniteGroup, Vec<Elem>) {
        let m = h.order();
        let mut pos = vec![u32::MAX; self.n];
        for (i, &x) in h.elems.iter().enumerate() {
            pos[x as usize] = i as u32;
        }
        let mut table = vec![0u16; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = pos[self.mul(h.elems[i], h.elems[j]) as usize] as u16;
            }
        }
        let gens = h.gens.iter().map(|&g| pos[g as usize]).collect();
        let labels = h.elems.iter().map(|&x| self.label(x).to_string()).collect();
        (Self::assemble(m, table, gens, labels, name.to_string()), h.elems.clone())
    }

    // ----- Frobenius criteria ------------------------------------------

    /// Kernel criterion: `C_G(x) ⊆ N` for every `1 ≠ x ∈ N`.
    pub fn is_frobenius_with_kernel(&self, nsub: &Subgroup) -> Result<bool> {
        if !self.is_normal(nsub) {
            return Err(Error::domain("candidate Frobenius kernel is not normal"));
        }
        if nsub.order() == 1 || nsub.order() == self.n {
            return Err(Error::domain("candidate Frobenius kernel must satisfy 1 < N < G"));
        }
        let cls = self.classes();
        for (c, members) in cls.members.iter().enumerate() {
            let x = cls.reps[c];
            if x == 0 || !nsub.contains(x) {
                continue;
            }
            if self.n / members.len() > nsub.order() {
                return Ok(false);
            }
            for g in 0..self.n as Elem {
                if !nsub.contains(g) && self.mul(g, x) == self.mul(x, g) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether `G/Z(G)` is Frobenius with kernel `F(G)/Z(G)`.
    pub fn is_quasi_frobenius(&self) -> QuasiFrobenius {
        let z = self.center();
        if z.order() == self.n {
            return QuasiFrobenius {
                holds: false,
                reason: "G/Z(G) is trivial".into(),
            };
        }
        let f = self.fitting();
        if f.order() == self.n {
            return QuasiFrobenius {
                holds: false,
                reason: "G is nilpotent, so F(G)/Z(G) is all of G/Z(G)".into(),
            };
        }
        let (qg, proj) = self.quotient(&z).expect("center is normal");
        let fbar: Vec<Elem> = f.elems.iter().map(|&x| proj[x as usize]).collect();
        let fbar = qg.closure(&fbar);
        match qg.is_frobenius_with_kernel(&fbar) {
            Ok(true) => QuasiFrobenius {
                holds: true,
                reason: format!(
                    "G/Z(G) of order {} is Frobenius with kernel F(G)/Z(G) of order {}",
                    qg.order(),
                    fbar.order()
                ),
            },
            Ok(false) => QuasiFrobenius {
                holds: false,
                reason: "some nontrivial element of F(G)/Z(G) has a centralizer outside it".into(),
            },
            Err(e) => QuasiFrobenius {
                holds: false,
                reason: e.to_string(),
            },
        }
    }

    /// A Hall `π`-subgroup for a set of primes, found as `⟨S_1, S_2^g, …⟩`
    /// over conjugates of Sylow subgroups. Returns `None` if no conjugate
    /// combination generates a `π`-subgroup (only possible for non-solvable
    /// groups).
    pub fn hall_subgroup(&self, primes: &[u64]) -> Option<Subgroup> {
        let target: u64 = primes.iter().map(|&p| p_part(self.n as u64, p)).product();
        let mut current = self.trivial_subgroup();
        for &p in primes {
            let syl = self.sylow(p);
            if syl.order() == 1 {
                continue;
            }
            let partial: u64 = current.order() as u64 * syl.order() as u64;
            let mut found = None;
            for g in 0..self.n as Elem {
                let conj = self.conjugate_subgroup(&syl, g);
                let joined = self.join(&current, &conj);
                if joined.order() as u64 == partial {
                    found = Some(joined);
                    break;
                }
            }
            current = found?;
        }
        (current.order() as u64 == target).then_some(current)
    }

    // ----- abelian subgroups ------------------------------------------

    /// Identifies an abelian subgroup with a product of cyclic groups of
    /// prime-power order (sorted by prime, then descending order).
    pub fn abelian_view(&self, h: &Subgroup) -> Result<AbelianView> {
        for &a in &h.gens {
            for &b in &h.gens {
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::domain("subgroup is not abelian"));
                }
            }
        }
        let mut factors = Vec::new();
        let mut basis = Vec::new();
        // coords over the bases found so far, combined prime by prime
        let mut combined: HashMap<Elem, Vec<i64>> = HashMap::from([(0, Vec::new())]);
        for (p, _) in factorize(h.order() as u64) {
            let s_p: Vec<Elem> = h
                .elems
                .iter()
                .copied()
                .filter(|&x| prime_divisors(self.element_order(x) as u64).iter().all(|&q| q == p))
                .collect();
            let mut kmap: HashMap<Elem, Vec<i64>> = HashMap::from([(0, Vec::new())]);
            let mut korders: Vec<u64> = Vec::new();
            let mut kbasis: Vec<Elem> = Vec::new();
            while kmap.len() < s_p.len() {
                // element of largest order modulo the current span
                let mut best = (0u64, 0 as Elem);
                for &s in &s_p {
                    let mut q = 1u64;
                    let mut y = s;
                    while !kmap.contains_key(&y) {
                        y = self.pow(y, p);
                        q *= p;
                    }
                    if q > best.0 {
                        best = (q, s);
                    }
                }
                let (q, s) = best;
                let c = &kmap[&self.pow(s, q)];
                let mut lifted = s;
                for (i, &ci) in c.iter().enumerate() {
                    debug_assert_eq!(ci as u64 % q, 0);
                    let k = (ci as u64 / q) % korders[i];
                    if k != 0 {
                        let t = self.pow(kbasis[i], korders[i] - k);
                        lifted = self.mul(lifted, t);
                    }
                }
                debug_assert_eq!(self.element_order(lifted) as u64, q);
                let mut next = HashMap::with_capacity(kmap.len() * q as usize);
                for (&k, coords) in &kmap {
                    let mut y = k;
                    for j in 0..q as i64 {
                        let mut v = coords.clone();
                        v.push(j);
                        next.insert(y, v);
                        y = self.mul(y, lifted);
                    }
                }
                kmap = next;
                korders.push(q);
                kbasis.push(lifted);
            }
            let mut next = HashMap::with_capacity(combined.len() * kmap.len());
            for (&x, cx) in &combined {
                for (&y, cy) in &kmap {
                    let mut v = cx.clone();
                    v.extend(cy.iter().copied());
                    next.insert(self.mul(x, y), v);
                }
            }
            combined = next;
            factors.extend(korders);
            basis.extend(kbasis);
        }
        let group = AbelianGroup::new(factors).expect("prime-power factors");
        let mut by_index = vec![0; h.order()];
        let coords: HashMap<Elem, AbElement> = combined
            .into_iter()
            .map(|(x, c)| {
                let e = AbElement { coords: c };
                by_index[group.index_of(&e)] = x;
                (x, e)
            })
            .collect();
        Ok(AbelianView {
            group,
            basis,
            coords,
            by_index,
        })
    }
}

pub(crate) fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut q = 1;
    while m.is_multiple_of(p) {
        m /= p;
        q *= p;
    }
    q
}

/// Parses cycle notation such as `(1,2,3)(4,5)` into an image list on
/// `{0, …, degree-1}`. Points are 1-based in the text.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Vec<u8>> {
    let mut perm: Vec<u8> = (0..degree as u8).collect();
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "()" || t.is_empty() {
        return Ok(perm);
    }
    let mut rest = t.as_str();
    let mut used = vec![false; degree];
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .ok_or_else(|| Error::domain(format!("unbalanced cycle in `{text}`")))?;
        if !rest.starts_with('(') {
            return Err(Error::domain(format!("expected `(` in `{text}`")));
        }
        let body = &rest[1..body_end];
        let pts: Vec<usize> = body
            .split(',')
            .map(|s| s.parse::<usize>().map_err(|_| Error::domain(format!("bad point `{s}` in `{text}`"))))
            .collect::<Result<_>>()?;
        for &pt in &pts {
            if pt == 0 || pt > degree {
                return Err(Error::domain(format!("point {pt} outside 1..={degree}")));
            }
            if used[pt - 1] {
                return Err(Error::domain(format!("point {pt} repeated in `{text}`")));
            }
            used[pt - 1] = true;
        }
        for i in 0..pts.len() {
            perm[pts[i] - 1] = (pts[(i + 1) % pts.len()] - 1) as u8;
        }
        rest = &rest[body_end + 1..];
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(degree: usize, gens: &[&str]) -> FiniteGroup {
        let g: Vec<Vec<u8>> = gens.iter().map(|s| parse_cycles(s, degree).unwrap()).collect();
        FiniteGroup::from_permutations(degree, &g, "test").unwrap()
    }

    fn s4() -> FiniteGroup {
        perm_group(4, &["(1,2,3,4)", "(1,2)"])
    }

    fn q8() -> FiniteGroup {
        // regular representation of Q8 on 8 points
        perm_group(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"])
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(1,2,3)", 4).unwrap(), vec![1, 2, 0, 3]);
        assert_eq!(parse_cycles("()", 2).unwrap(), vec![0, 1]);
        assert!(parse_cycles("(1,5)", 4).is_err());
        assert!(parse_cycles("(1,2", 4).is_err());
        assert_eq!(cycle_string(&[1, 2, 0, 3]), "(1,2,3)");
    }

    #[test]
    fn s4_structure() {
        let g = s4();
        assert_eq!(g.order(), 24);
        let cls = g.classes();
        let mut sizes = cls.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.derived_subgroup().order(), 12);
        let f = g.fitting();
        assert_eq!(f.order(), 4);
        assert!(!g.is_a_group());
        assert_eq!(g.sylow(2).order(), 8);
        assert_eq!(g.sylow(3).order(), 3);
        assert!(!g.is_frobenius_with_kernel(&f).unwrap());
        assert!(!g.is_nilpotent());
        assert!(g.nilpotency_class().is_err());
    }

    #[test]
    fn q8_structure() {
        let g = q8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.nilpotency_class().unwrap(), 2);
        assert!(!g.is_quasi_frobenius().holds);
    }

    #[test]
    fn frobenius_examples() {
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        let c3 = s3.sylow(3);
        assert!(s3.is_frobenius_with_kernel(&c3).unwrap());
        assert!(s3.is_a_group());
        let a4 = perm_group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        let v4 = a4.o_p(2);
        assert_eq!(v4.order(), 4);
        assert!(a4.is_frobenius_with_kernel(&v4).unwrap());
        assert!(a4.is_quasi_frobenius().holds);
        let not_normal = s3.sylow(2);
        assert!(s3.is_frobenius_with_kernel(&not_normal).is_err());
    }

    #[test]
    fn quotient_and_subgroups() {
        let g = s4();
        let v4 = g.fitting();
        let (q, proj) = g.quotient(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        for a in 0..24 {
            for b in 0..24 {
                assert_eq!(proj[g.mul(a, b) as usize], q.mul(proj[a as usize], proj[b as usize]));
            }
        }
        assert!(g.quotient(&g.sylow(3)).is_err());
        let (h, emb) = g.subgroup_as_group(&g.sylow(2), "D8");
        assert_eq!(h.order(), 8);
        assert_eq!(h.center().order(), 2);
        assert_eq!(emb.len(), 8);
    }

    #[test]
    fn abelian_views() {
        let c = perm_group(7, &["(1,2,3,4)(5,6,7)"]);
        let view = c.abelian_view(&c.whole()).unwrap();
        assert_eq!(view.group.factors(), &[4, 3]);
        for x in 0..12 {
            let e = view.coords(x).unwrap();
            assert_eq!(view.element(e), x);
        }
        let v = c.abelian_view(&c.whole()).unwrap();
        let a = v.coords(3).unwrap().clone();
        let b = v.coords(5).unwrap().clone();
        assert_eq!(v.coords(c.mul(3, 5)).unwrap(), &v.group.add(&a, &b));
        assert!(s4().abelian_view(&s4().whole()).is_err());
    }

    #[test]
    fn semidirect_s4() {
        // V4 ⋊ S3 with S3 permuting the three involutions.
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        let a = AbelianGroup::new(vec![2, 2]).unwrap();
        // (1,2,3): e1 -> e2 -> e1+e2 ; (1,2): swap
        let x = AbHom::from_matrix(&a, &[vec![0, 1], vec![1, 1]]).unwrap();
        let t = AbHom::from_matrix(&a, &[vec![0, 1], vec![1, 0]]).unwrap();
        let sd = FiniteGroup::semidirect(&SemidirectSpec { a, h: s3, action: vec![x, t] }, "S4").unwrap();
        let g = &sd.group;
        assert_eq!(g.order(), 24);
        assert!(g.is_normal(&sd.a));
        assert_eq!(g.intersection(&sd.a, &sd.h).order(), 1);
        let mut sizes = g.classes().sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(g.derived_subgroup().order(), 12);
        // conjugation by the first complement generator realises its matrix
        let s3 = perm_group(3, &["(1,2,3)", "(1,2)"]);
        let h = sd.h_index[s3.generators()[0] as usize];
        let e1 = sd.a_index[1];
        let e2 = sd.a_index[2];
        assert_eq!(g.conj(e1, h), e2);
    }

    #[test]
    fn semidirect_rejects_non_homomorphism() {
        let c2 = perm_group(2, &["(1,2)"]);
        let a = AbelianGroup::new(vec![3]).unwrap();
        // an automorphism of order 1 is fine, but C2 acting by x ↦ 2x... is
        // order 2, so use a map of order 3 on C7 to break it
        let a7 = AbelianGroup::new(vec![7]).unwrap();
        let bad = AbHom::from_matrix(&a7, &[vec![2]]).unwrap();
        assert!(FiniteGroup::semidirect(&SemidirectSpec { a: a7, h: c2.clone(), action: vec![bad] }, "bad").is_err());
        let ok = AbHom::from_matrix(&a, &[vec![2]]).unwrap();
        let g = FiniteGroup::semidirect(&SemidirectSpec { a, h: c2, action: vec![ok] }, "S3").unwrap();
        assert_eq!(g.group.center().order(), 1);
    }

    #[test]
    fn table_validation() {
        let bad = vec![0, 1, 1, 1];
        assert!(FiniteGroup::from_table(2, bad, "bad").is_err());
        let c2 = vec![0, 1, 1, 0];
        let g = FiniteGroup::from_table(2, c2, "C2").unwrap();
        assert_eq!(g.generators(), &[1]);
        assert!(FiniteGroup::from_permutations(
            20,
            &[parse_cycles("(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20)", 20).unwrap(),
              parse_cycles("(1,2)", 20).unwrap()],
            "S20"
        )
        .is_err());
    }

    #[test]
    fn hall_subgroups() {
        let g = s4();
        let h = g.hall_subgroup(&[2, 3]).unwrap();
        assert_eq!(h.order(), 24);
        let a4 = perm_group(4, &["(1,2,3)", "(1,2)(3,4)"]);
        assert!(a4.hall_subgroup(&[3]).is_some());
        let a5 = perm_group(5, &["(1,2,3,4,5)", "(1,2,3)"]);
        assert!(a5.hall_subgroup(&[2, 5]).is_none());
    }
}
