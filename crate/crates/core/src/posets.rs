//! Finite posets, lattices of order ideals, linear extensions and flag
//! vectors.
//!
//! Flag f/h-vectors are indexed by subsets of the interior ranks
//! `1..rank(top)`; the bottom and top elements never occur in a counted chain.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::dyck::{enumerate, DyckPath, RankSubset, ReferenceOrder, Step};
use crate::error::{Error, Result};

/// Limit for exhaustive enumeration of linear extensions.
pub const LINEAR_EXTENSION_LIMIT: usize = 16;
/// Limit on the number of interior ranks for dense flag-vector tables.
pub const FLAG_RANK_LIMIT: usize = 24;
/// Largest base poset for [`ideal_lattice`] (ideals are `u64` masks).
pub const IDEAL_BASE_LIMIT: usize = 64;
/// Largest semilength accepted by [`verify_theorem_main`].
pub const MAIN_THEOREM_LIMIT: usize = 6;

/// A finite poset on `0..len()`, given by its covering relations.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    /// `below[b]` holds every `a < b`
    below: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds a poset from covering pairs `(a, b)` meaning `a ⋖ b`.
    ///
    /// The pairs must be acyclic and form a transitive reduction.
    pub fn new(size: usize, covers: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut covers: Vec<(usize, usize)> = covers.into_iter().collect();
        covers.sort_unstable();
        covers.dedup();
        let poset = Self::build(size, covers)?;
        for &(a, b) in &poset.covers {
            // a ⋖ b is redundant if some other lower cover c of b sits above a
            if poset.lower[b].iter().any(|&c| c != a && poset.below[c].contains(a)) {
                return Err(Error::InvalidPoset(format!("cover ({a}, {b}) is implied by others")));
            }
        }
        Ok(poset)
    }

    /// Builds a poset from arbitrary strict relations, keeping only covers.
    pub fn from_relations(size: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut rel: Vec<(usize, usize)> = relations.into_iter().collect();
        rel.sort_unstable();
        rel.dedup();
        let full = Self::build(size, rel)?;
        let covers = full
            .covers
            .iter()
            .copied()
            .filter(|&(a, b)| !full.lower[b].iter().any(|&c| c != a && full.below[c].contains(a)))
            .collect::<Vec<_>>();
        Self::build(size, covers)
    }

    fn build(size: usize, covers: Vec<(usize, usize)>) -> Result<Self> {
        let mut upper = vec![Vec::new(); size];
        let mut lower = vec![Vec::new(); size];
        for &(a, b) in &covers {
            if a >= size || b >= size {
                return Err(Error::InvalidPoset(format!("cover ({a}, {b}) outside 0..{size}")));
            }
            if a == b {
                return Err(Error::InvalidPoset(format!("reflexive cover at {a}")));
            }
            upper[a].push(b);
            lower[b].push(a);
        }
        let order = topological_order(size, &upper, &lower)
            .ok_or_else(|| Error::InvalidPoset("cover relation has a cycle".into()))?;
        let mut below = vec![FixedBitSet::with_capacity(size); size];
        for &b in &order {
            let mut acc = FixedBitSet::with_capacity(size);
            for &a in &lower[b] {
                acc.insert(a);
                acc.union_with(&below[a]);
            }
            below[b] = acc;
        }
        Ok(FinitePoset {
            covers,
            upper,
            lower,
            below,
        })
    }

    pub fn chain(len: usize) -> Self {
        Self::new(len, (1..len).map(|i| (i - 1, i))).expect("chain is a valid poset")
    }

    pub fn antichain(len: usize) -> Self {
        Self::new(len, []).expect("antichain is a valid poset")
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    /// Strict order `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn strictly_below(&self, b: usize) -> &FixedBitSet {
        &self.below[b]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lower[a].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper[a].is_empty()).collect()
    }

    /// Whether `f` (indexed by element, values `1..=p`) is an order-preserving
    /// bijection onto `1..=p`.
    pub fn is_linear_extension(&self, f: &[usize]) -> bool {
        let p = self.len();
        if f.len() != p {
            return false;
        }
        let mut seen = vec![false; p + 1];
        for &v in f {
            if v == 0 || v > p || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.covers.iter().all(|&(a, b)| f[a] < f[b])
    }
}

fn topological_order(size: usize, upper: &[Vec<usize>], lower: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..size).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(size);
    while let Some(a) = queue.pop_front() {
        order.push(a);
        for &b in &upper[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                queue.push_back(b);
            }
        }
    }
    (order.len() == size).then_some(order)
}

/// Element index of `(i, k)` in [`chain_product_2xn`], `i ∈ {1,2}`, `k ∈ 1..=n`.
pub fn product_index(n: usize, i: usize, k: usize) -> usize {
    debug_assert!((1..=2).contains(&i) && (1..=n).contains(&k));
    (i - 1) * n + (k - 1)
}

/// The product `2 × n`: `(i,k) <= (i',k')` iff `i <= i'` and `k <= k'`.
/// Elements `0..n` form the chain `C_1`, elements `n..2n` the chain `C_2`.
pub fn chain_product_2xn(n: usize) -> Result<FinitePoset> {
    if n == 0 {
        return Err(Error::InvalidArgument("2 x n needs n >= 1".into()));
    }
    let mut covers = Vec::new();
    for i in 1..=2 {
        for k in 1..n {
            covers.push((product_index(n, i, k), product_index(n, i, k + 1)));
        }
    }
    for k in 1..=n {
        covers.push((product_index(n, 1, k), product_index(n, 2, k)));
    }
    FinitePoset::new(2 * n, covers)
}

/// A poset with a bottom, a top and a rank function raised by every cover.
#[derive(Clone, Debug)]
pub struct GradedBoundedPoset {
    poset: FinitePoset,
    bottom: usize,
    top: usize,
    rank: Vec<usize>,
}

impl GradedBoundedPoset {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let mins = poset.minimal_elements();
        let maxs = poset.maximal_elements();
        let (&[bottom], &[top]) = (mins.as_slice(), maxs.as_slice()) else {
            return Err(Error::InvalidPoset("needs a unique minimum and maximum".into()));
        };
        let mut rank = vec![usize::MAX; poset.len()];
        rank[bottom] = 0;
        let mut queue = VecDeque::from([bottom]);
        while let Some(a) = queue.pop_front() {
            for &b in poset.upper_covers(a) {
                if rank[b] == usize::MAX {
                    rank[b] = rank[a] + 1;
                    queue.push_back(b);
                } else if rank[b] != rank[a] + 1 {
                    return Err(Error::InvalidPoset("not graded".into()));
                }
            }
        }
        Ok(GradedBoundedPoset {
            poset,
            bottom,
            top,
            rank,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    /// Rank of the top element.
    pub fn height(&self) -> usize {
        self.rank[self.top]
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.rank[a] == r).collect()
    }

    /// Rank set of a chain.
    pub fn rank_set(&self, chain: &[usize]) -> RankSubset {
        RankSubset::from_bits(chain.iter().fold(0u64, |m, &a| m | 1 << self.rank[a]))
    }

    fn check_interior(&self, s: &RankSubset) -> Result<()> {
        let max = self.height().saturating_sub(1);
        match s.iter().find(|&r| r > max) {
            Some(rank) => Err(Error::RankOutOfRange { rank, max }),
            None => Ok(()),
        }
    }
}

/// `J(P)`: order ideals of a base poset ordered by inclusion.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    lattice: GradedBoundedPoset,
    ideals: Vec<u64>,
    index: HashMap<u64, usize>,
    base: FinitePoset,
}

impl IdealLattice {
    pub fn lattice(&self) -> &GradedBoundedPoset {
        &self.lattice
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    /// The ideal of lattice element `a` as a bit mask over base elements.
    pub fn ideal(&self, a: usize) -> u64 {
        self.ideals[a]
    }

    pub fn ideals(&self) -> &[u64] {
        &self.ideals
    }

    pub fn index_of(&self, ideal: u64) -> Option<usize> {
        self.index.get(&ideal).copied()
    }
}

/// All order ideals of `base`, ordered by inclusion, ranked by cardinality.
/// Elements are listed by increasing size, then by mask.
pub fn ideal_lattice(base: &FinitePoset) -> Result<IdealLattice> {
    let p = base.len();
    if p > IDEAL_BASE_LIMIT {
        return Err(Error::TooLarge {
            what: "base poset",
            size: p as u64,
            limit: IDEAL_BASE_LIMIT as u64,
        });
    }
    let down: Vec<u64> = (0..p)
        .map(|a| base.strictly_below(a).ones().fold(0u64, |m, b| m | 1 << b))
        .collect();
    let mut ideals = vec![0u64];
    let mut seen: HashMap<u64, usize> = HashMap::from([(0, 0)]);
    let mut covers = Vec::new();
    let mut head = 0;
    // BFS by size: ideals of size r are discovered from those of size r - 1
    while head < ideals.len() {
        let ideal = ideals[head];
        for a in 0..p {
            if ideal >> a & 1 == 0 && down[a] & !ideal == 0 {
                let next = ideal | 1 << a;
                let j = *seen.entry(next).or_insert_with(|| {
                    ideals.push(next);
                    ideals.len() - 1
                });
                covers.push((head, j));
            }
        }
        head += 1;
    }
    // canonical order: (size, mask)
    let mut order: Vec<usize> = (0..ideals.len()).collect();
    order.sort_by_key(|&i| (ideals[i].count_ones(), ideals[i]));
    let mut relabel = vec![0; ideals.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let sorted: Vec<u64> = order.iter().map(|&i| ideals[i]).collect();
    let covers = covers.into_iter().map(|(a, b)| (relabel[a], relabel[b]));
    let poset = FinitePoset::new(sorted.len(), covers)?;
    let lattice = GradedBoundedPoset::new(poset)?;
    let index = sorted.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    Ok(IdealLattice {
        lattice,
        ideals: sorted,
        index,
        base: base.clone(),
    })
}

/// All linear extensions of `p`, each as a map element -> position `1..=|P|`.
pub fn linear_extensions(p: &FinitePoset) -> Result<Vec<Vec<usize>>> {
    if p.len() > LINEAR_EXTENSION_LIMIT {
        return Err(Error::TooLarge {
            what: "poset for linear extensions",
            size: p.len() as u64,
            limit: LINEAR_EXTENSION_LIMIT as u64,
        });
    }
    let mut out = Vec::new();
    let mut indeg: Vec<usize> = (0..p.len()).map(|a| p.lower_covers(a).len()).collect();
    let mut sigma = vec![0; p.len()];
    extend(p, &mut indeg, &mut sigma, 1, &mut out);
    Ok(out)
}

fn extend(p: &FinitePoset, indeg: &mut [usize], sigma: &mut [usize], next: usize, out: &mut Vec<Vec<usize>>) {
    if next > p.len() {
        out.push(sigma.to_vec());
        return;
    }
    for a in 0..p.len() {
        if sigma[a] == 0 && indeg[a] == 0 {
            sigma[a] = next;
            for &b in p.upper_covers(a) {
                indeg[b] -= 1;
            }
            extend(p, indeg, sigma, next + 1, out);
            for &b in p.upper_covers(a) {
                indeg[b] += 1;
            }
            sigma[a] = 0;
        }
    }
}

fn inverse(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (a, &v) in f.iter().enumerate() {
        inv[v - 1] = a;
    }
    inv
}

/// The Jordan–Hölder set `{ω ∘ σ⁻¹}` over all linear extensions `σ`, each
/// permutation written as its one-line notation `π(1) … π(p)`.
pub fn jordan_holder(p: &FinitePoset, omega: &[usize]) -> Result<Vec<Vec<usize>>> {
    if !p.is_linear_extension(omega) {
        return Err(Error::NotLinearExtension);
    }
    Ok(linear_extensions(p)?
        .iter()
        .map(|sigma| inverse(sigma).iter().map(|&a| omega[a]).collect())
        .collect())
}

/// `{i : π(i) > π(i+1)}` for a permutation in one-line notation.
pub fn permutation_descent_set(pi: &[usize]) -> RankSubset {
    let bits = pi
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .fold(0u64, |m, (i, _)| m | 1 << (i + 1));
    RankSubset::from_bits(bits)
}

/// Number of chains of the proper part whose rank set is exactly `s`.
pub fn flag_f(l: &GradedBoundedPoset, s: &RankSubset) -> Result<u128> {
    l.check_interior(s)?;
    let ranks = s.members();
    let Some(&first) = ranks.first() else {
        return Ok(1);
    };
    let mut counts: Vec<(usize, u128)> = l.elements_of_rank(first).into_iter().map(|a| (a, 1)).collect();
    for &r in &ranks[1..] {
        counts = l
            .elements_of_rank(r)
            .into_iter()
            .map(|b| {
                let c = counts.iter().filter(|&&(a, _)| l.poset.lt(a, b)).map(|&(_, c)| c).sum();
                (b, c)
            })
            .collect();
    }
    Ok(counts.iter().map(|&(_, c)| c).sum())
}

/// `β(S) = Σ_{T ⊆ S} (-1)^{|S-T|} α(T)`.
pub fn flag_h(l: &GradedBoundedPoset, s: &RankSubset) -> Result<i128> {
    l.check_interior(s)?;
    let bits = s.bits();
    let mut total = 0i128;
    let mut t = bits;
    // walk every submask of `bits`, including 0
    loop {
        let alpha = flag_f(l, &RankSubset::from_bits(t))? as i128;
        if (s.len() - t.count_ones() as usize).is_multiple_of(2) {
            total += alpha;
        } else {
            total -= alpha;
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & bits;
    }
    Ok(total)
}

/// Dense flag f- and h-vectors of a graded bounded poset.
///
/// Slot `m` describes the rank set whose bit `j` stands for rank `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVectors {
    interior_ranks: usize,
    alpha: Vec<u128>,
    beta: Vec<i128>,
}

impl FlagVectors {
    /// Enumerates the chains of the proper part once, bucketing them by rank
    /// set, then applies the subset Möbius transform.
    pub fn compute(l: &GradedBoundedPoset) -> Result<Self> {
        let r = l.height().saturating_sub(1);
        if r > FLAG_RANK_LIMIT {
            return Err(Error::TooLarge {
                what: "number of interior ranks",
                size: r as u64,
                limit: FLAG_RANK_LIMIT as u64,
            });
        }
        let mut proper: Vec<usize> = (0..l.len()).filter(|&a| (1..=r).contains(&l.rank(a))).collect();
        proper.sort_by_key(|&a| l.rank(a));
        // ending[a][m]: chains with maximum a and rank set m (bit j = rank j+1)
        let mut ending: HashMap<usize, Vec<u128>> = HashMap::new();
        let mut alpha = vec![0u128; 1 << r];
        alpha[0] = 1;
        for &a in &proper {
            let ra = l.rank(a);
            let own = 1usize << (ra - 1);
            let mut v = vec![0u128; 1 << ra];
            v[own] = 1;
            for b in l.poset.strictly_below(a).ones() {
                if let Some(vb) = ending.get(&b) {
                    for (m, &c) in vb.iter().enumerate() {
                        if c != 0 {
                            v[m | own] += c;
                        }
                    }
                }
            }
            for (m, &c) in v.iter().enumerate() {
                alpha[m] += c;
            }
            ending.insert(a, v);
        }
        let mut beta: Vec<i128> = alpha.iter().map(|&a| a as i128).collect();
        for j in 0..r {
            for m in 0..beta.len() {
                if m >> j & 1 == 1 {
                    beta[m] -= beta[m ^ (1 << j)];
                }
            }
        }
        Ok(FlagVectors {
            interior_ranks: r,
            alpha,
            beta,
        })
    }

    pub fn interior_ranks(&self) -> usize {
        self.interior_ranks
    }

    fn slot(&self, s: &RankSubset) -> Result<usize> {
        match s.iter().find(|&x| x > self.interior_ranks) {
            Some(rank) => Err(Error::RankOutOfRange {
                rank,
                max: self.interior_ranks,
            }),
            None => Ok((s.bits() >> 1) as usize),
        }
    }

    pub fn alpha(&self, s: &RankSubset) -> Result<u128> {
        Ok(self.alpha[self.slot(s)?])
    }

    pub fn beta(&self, s: &RankSubset) -> Result<i128> {
        Ok(self.beta[self.slot(s)?])
    }

    /// Every `(S, β(S))`, in increasing bit order of `S`.
    pub fn beta_entries(&self) -> impl Iterator<Item = (RankSubset, i128)> + '_ {
        self.beta
            .iter()
            .enumerate()
            .map(|(m, &b)| (RankSubset::from_bits((m as u64) << 1), b))
    }
}

/// The lattice `J(2 × n)` with its flag vectors.
pub fn j2xn(n: usize) -> Result<IdealLattice> {
    ideal_lattice(&chain_product_2xn(n)?)
}

/// The path `W(σ)`: position `i` is `V` if `σ⁻¹(i)` lies in `C_1`, `H` if in `C_2`.
pub fn extension_to_path(n: usize, sigma: &[usize]) -> Result<DyckPath> {
    let p = chain_product_2xn(n)?;
    if !p.is_linear_extension(sigma) {
        return Err(Error::NotLinearExtension);
    }
    let steps: Vec<Step> = inverse(sigma)
        .into_iter()
        .map(|a| if a < n { Step::V } else { Step::H })
        .collect();
    DyckPath::new(&steps)
}

/// Inverse of [`extension_to_path`]: `v_j` at position `i` sends `(1,j)` to `i`.
pub fn path_to_extension(w: &DyckPath) -> Vec<usize> {
    let n = w.semilength();
    let mut sigma = vec![0; 2 * n];
    let (mut vs, mut hs) = (0, 0);
    for (i, s) in w.steps().enumerate() {
        match s {
            Step::V => {
                vs += 1;
                sigma[product_index(n, 1, vs)] = i + 1;
            }
            Step::H => {
                hs += 1;
                sigma[product_index(n, 2, hs)] = i + 1;
            }
        }
    }
    sigma
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SubsetComparison {
    pub subset: RankSubset,
    pub flag_h: i128,
    pub paths: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub n: usize,
    pub reference: DyckPath,
    pub entries: Vec<SubsetComparison>,
    pub pass: bool,
}

impl MainTheoremReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &SubsetComparison> {
        self.entries.iter().filter(|e| e.flag_h != e.paths as i128)
    }
}

/// Compares `β_n(S)` of `J(2 × n)` with `#{w : D_W(w) = S}` for every
/// `S ⊆ [2n-1]`.
pub fn verify_theorem_main(n: usize, reference: &DyckPath) -> Result<MainTheoremReport> {
    let flags = FlagVectors::compute(j2xn(n)?.lattice())?;
    verify_theorem_main_with(n, reference, &flags, &enumerate(n))
}

/// [`verify_theorem_main`] reusing precomputed flag vectors and paths.
pub fn verify_theorem_main_with(
    n: usize,
    reference: &DyckPath,
    flags: &FlagVectors,
    paths: &[DyckPath],
) -> Result<MainTheoremReport> {
    if n > MAIN_THEOREM_LIMIT {
        return Err(Error::TooLarge {
            what: "semilength for the main theorem check",
            size: n as u64,
            limit: MAIN_THEOREM_LIMIT as u64,
        });
    }
    if reference.semilength() != n {
        return Err(Error::LengthMismatch {
            left: 2 * n,
            right: reference.len(),
        });
    }
    let order = ReferenceOrder::new(reference);
    let mut counts: HashMap<RankSubset, u64> = HashMap::new();
    for w in paths {
        *counts.entry(order.descent_set(w)?).or_insert(0) += 1;
    }
    let entries: Vec<SubsetComparison> = flags
        .beta_entries()
        .map(|(subset, flag_h)| SubsetComparison {
            subset,
            flag_h,
            paths: counts.get(&subset).copied().unwrap_or(0),
        })
        .collect();
    let pass = entries.iter().all(|e| e.flag_h == e.paths as i128);
    Ok(MainTheoremReport {
        n,
        reference: *reference,
        entries,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::catalan_u64;
    use crate::qpoly::narayana;

    fn set(m: &[usize]) -> RankSubset {
        RankSubset::from_members(m.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_bad_covers() {
        assert!(FinitePoset::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(FinitePoset::new(3, [(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(FinitePoset::new(2, [(0, 2)]).is_err());
        let p = FinitePoset::from_relations(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.lt(0, 2));
    }

    #[test]
    fn product_poset() {
        let one = chain_product_2xn(1).unwrap();
        assert_eq!((one.len(), one.covers().len()), (2, 1));
        let two = chain_product_2xn(2).unwrap();
        assert_eq!((two.len(), two.covers().len()), (4, 4));
        let four = chain_product_2xn(4).unwrap();
        assert_eq!(four.len(), 8);
        assert!(four.lt(product_index(4, 1, 1), product_index(4, 2, 4)));
        assert!(!four.leq(product_index(4, 2, 1), product_index(4, 1, 4)));
        assert!(chain_product_2xn(0).is_err());
    }

    #[test]
    fn ideal_lattice_sizes() {
        assert_eq!(ideal_lattice(&FinitePoset::antichain(2)).unwrap().lattice().len(), 4);
        for n in 1..=7 {
            let j = j2xn(n).unwrap();
            assert_eq!(j.lattice().len(), (n + 1) * (n + 2) / 2);
            assert_eq!(j.lattice().height(), 2 * n);
            for (a, &m) in j.ideals().iter().enumerate() {
                assert_eq!(j.lattice().rank(a), m.count_ones() as usize);
            }
        }
    }

    #[test]
    fn ideal_lattice_rejects_ungraded_input() {
        // not bounded: two maximal elements in a non-lattice poset
        let p = FinitePoset::new(3, [(0, 1), (0, 2)]).unwrap();
        assert!(GradedBoundedPoset::new(p).is_err());
        // pentagon is bounded but not graded
        let pentagon = FinitePoset::new(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(GradedBoundedPoset::new(pentagon).is_err());
    }

    #[test]
    fn linear_extension_counts() {
        assert_eq!(linear_extensions(&FinitePoset::chain(3)).unwrap().len(), 1);
        assert_eq!(linear_extensions(&FinitePoset::antichain(3)).unwrap().len(), 6);
        for n in 1..=6 {
            let exts = linear_extensions(&chain_product_2xn(n).unwrap()).unwrap();
            assert_eq!(exts.len() as u64, catalan_u64(n));
        }
        assert!(matches!(
            linear_extensions(&FinitePoset::antichain(17)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn jordan_holder_examples() {
        let chain = FinitePoset::chain(4);
        let id = vec![1, 2, 3, 4];
        assert_eq!(jordan_holder(&chain, &id).unwrap(), vec![id.clone()]);
        let mut anti = jordan_holder(&FinitePoset::antichain(2), &[1, 2]).unwrap();
        anti.sort();
        assert_eq!(anti, vec![vec![1, 2], vec![2, 1]]);
        assert!(matches!(
            jordan_holder(&chain, &[2, 1, 3, 4]),
            Err(Error::NotLinearExtension)
        ));

        let p = chain_product_2xn(3).unwrap();
        let omega = path_to_extension(&DyckPath::staircase(3));
        let mut hist = [0usize; 3];
        for pi in jordan_holder(&p, &omega).unwrap() {
            hist[permutation_descent_set(&pi).len()] += 1;
        }
        assert_eq!(hist, [1, 3, 1]);
    }

    #[test]
    fn flag_f_examples() {
        let j2 = j2xn(2).unwrap();
        assert_eq!(flag_f(j2.lattice(), &RankSubset::EMPTY).unwrap(), 1);
        assert_eq!(flag_f(j2.lattice(), &set(&[2])).unwrap(), 2);
        for n in 1..=6 {
            let j = j2xn(n).unwrap();
            let full = RankSubset::from_members(1..2 * n).unwrap();
            assert_eq!(flag_f(j.lattice(), &full).unwrap() as u64, catalan_u64(n));
        }
        assert!(matches!(
            flag_f(j2.lattice(), &set(&[4])),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn flag_h_examples() {
        let j3 = j2xn(3).unwrap();
        assert_eq!(flag_h(j3.lattice(), &RankSubset::EMPTY).unwrap(), 1);
        // one path of D_3 has descent set {3}
        assert_eq!(flag_h(j3.lattice(), &set(&[3])).unwrap(), 1);
        assert_eq!(flag_h(j3.lattice(), &set(&[1])).unwrap(), 0);
        assert_eq!(flag_h(j3.lattice(), &set(&[2, 4])).unwrap(), 1);
    }

    #[test]
    fn dense_table_agrees_with_direct_counts() {
        for n in 1..=5 {
            let j = j2xn(n).unwrap();
            let flags = FlagVectors::compute(j.lattice()).unwrap();
            for s in RankSubset::all_within(2 * n - 1) {
                assert_eq!(flags.alpha(&s).unwrap(), flag_f(j.lattice(), &s).unwrap());
                assert_eq!(flags.beta(&s).unwrap(), flag_h(j.lattice(), &s).unwrap());
            }
        }
    }

    #[test]
    fn flag_h_of_j2xn_is_rank_selected_narayana() {
        for n in 1..=6 {
            let flags = FlagVectors::compute(j2xn(n).unwrap().lattice()).unwrap();
            let mut by_size = vec![0i128; 2 * n];
            let mut total = 0i128;
            for (s, b) in flags.beta_entries() {
                assert!(b >= 0, "negative β at {s}");
                by_size[s.len()] += b;
                total += b;
            }
            assert_eq!(total as u64, catalan_u64(n));
            for k in 0..n {
                assert_eq!(by_size[k] as u64, u64::try_from(narayana(n, k).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn stanley_descent_multiset() {
        for n in 1..=5 {
            let p = chain_product_2xn(n).unwrap();
            let flags = FlagVectors::compute(j2xn(n).unwrap().lattice()).unwrap();
            for w0 in enumerate(n) {
                let omega = path_to_extension(&w0);
                let mut counts: HashMap<RankSubset, i128> = HashMap::new();
                for pi in jordan_holder(&p, &omega).unwrap() {
                    *counts.entry(permutation_descent_set(&pi)).or_insert(0) += 1;
                }
                for (s, b) in flags.beta_entries() {
                    assert_eq!(counts.get(&s).copied().unwrap_or(0), b, "n={n} ω={w0} S={s}");
                }
            }
        }
    }

    #[test]
    fn figure_extension() {
        let mut sigma = vec![0; 8];
        for (i, k, v) in [(1, 1, 1), (1, 2, 2), (2, 1, 3), (1, 3, 4), (1, 4, 5), (2, 2, 6), (2, 3, 7), (2, 4, 8)] {
            sigma[product_index(4, i, k)] = v;
        }
        let w = extension_to_path(4, &sigma).unwrap();
        assert_eq!(w.label().to_string(), "v1v2h1v3v4h2h3h4");
        assert_eq!(path_to_extension(&w), sigma);
        assert_eq!(extension_to_path(1, &[1, 2]).unwrap().to_string(), "vh");
        assert_eq!(extension_to_path(3, &[1, 2, 3, 4, 5, 6]).unwrap(), DyckPath::staircase(3));
        assert!(extension_to_path(2, &[2, 1, 3, 4]).is_err());
    }

    #[test]
    fn extension_bijection_roundtrip() {
        for n in 1..=6 {
            let p = chain_product_2xn(n).unwrap();
            let exts = linear_extensions(&p).unwrap();
            let mut paths: Vec<DyckPath> = exts.iter().map(|s| extension_to_path(n, s).unwrap()).collect();
            for (s, w) in exts.iter().zip(&paths) {
                assert_eq!(&path_to_extension(w), s);
            }
            paths.sort();
            assert_eq!(paths, enumerate(n));
        }
    }

    #[test]
    fn main_theorem_examples() {
        let r = verify_theorem_main(1, &"vh".parse().unwrap()).unwrap();
        assert!(r.pass);
        assert_eq!(r.entries.len(), 2);
        assert_eq!(r.entries.iter().filter(|e| e.flag_h != 0).count(), 1);

        let stair = verify_theorem_main(3, &DyckPath::staircase(3)).unwrap();
        let alt = verify_theorem_main(3, &DyckPath::alternating(3)).unwrap();
        assert!(stair.pass && alt.pass);
        let nonzero: Vec<_> = stair.entries.iter().filter(|e| e.flag_h != 0).map(|e| (e.subset, e.flag_h)).collect();
        assert_eq!(
            nonzero,
            vec![(RankSubset::EMPTY, 1), (set(&[2]), 1), (set(&[3]), 1), (set(&[4]), 1), (set(&[2, 4]), 1)]
        );

        assert!(verify_theorem_main(7, &DyckPath::staircase(7)).is_err());
        assert!(verify_theorem_main(3, &DyckPath::staircase(2)).is_err());
    }

    #[test]
    fn main_theorem_exhaustive_small() {
        for n in 1..=4 {
            let flags = FlagVectors::compute(j2xn(n).unwrap().lattice()).unwrap();
            let paths = enumerate(n);
            for w in &paths {
                let r = verify_theorem_main_with(n, w, &flags, &paths).unwrap();
                assert!(r.pass, "W = {w}");
            }
        }
    }
}
