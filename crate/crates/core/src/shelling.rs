//! Pure simplicial complexes, partial orders on their facets, pre-shellings,
//! and the order `Omega_n` on the facets of the order complex of `J(2 × n)`.
//!
//! Faces are `u128` vertex masks, so complexes are limited to 128 vertices.
//! The proper part of `J(2 × 6)` has 26.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::dyck::{enumerate, DyckPath, RankSubset, MAX_SEMILENGTH};
use crate::error::{Error, Result};
use crate::posets::{chain_product_2xn, ideal_lattice, GradedBoundedPoset, IdealLattice};

pub const MAX_VERTICES: usize = 128;
/// Complexes with `facets · 2^d` above this are refused by face enumeration.
pub const FACE_LIMIT: u64 = 1 << 20;
/// Largest semilength for which `Omega_n` is built.
pub const OMEGA_LIMIT: usize = 8;

/// A set of vertices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(u128);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut bits = 0u128;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::TooLarge {
                    what: "vertex index",
                    size: v as u64,
                    limit: MAX_VERTICES as u64 - 1,
                });
            }
            bits |= 1 << v;
        }
        Ok(Face(bits))
    }

    pub fn bits(&self) -> u128 {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn union(&self, other: &Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VERTICES).filter(move |&v| self.contains(v))
    }

    /// Every subset of this face, the face itself last.
    pub fn subsets(&self) -> impl Iterator<Item = Face> {
        let mask = self.0;
        let mut next = Some(0u128);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some((cur | !mask).wrapping_add(1) & mask) };
            Some(Face(cur))
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vertices()).finish()
    }
}

impl Serialize for Face {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

/// A pure simplicial complex given by its facets.
#[derive(Clone, Debug)]
pub struct PureComplex {
    num_vertices: usize,
    dim: usize,
    facets: Vec<Face>,
    /// for each facet `F`, the facets `E` with `|E ∩ F| = d - 1`, paired
    /// with the vertex `x` of `F` missing from `E`
    neighbors: Vec<Vec<(usize, usize)>>,
}

impl PureComplex {
    /// `facets` must be distinct and of equal cardinality.
    pub fn new(num_vertices: usize, facets: Vec<Face>) -> Result<Self> {
        if num_vertices > MAX_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: num_vertices as u64,
                limit: MAX_VERTICES as u64,
            });
        }
        let Some(first) = facets.first() else {
            return Err(Error::InvalidComplex("no facets".into()));
        };
        let dim = first.len();
        if let Some(bad) = facets.iter().find(|f| f.len() != dim) {
            return Err(Error::InvalidComplex(format!("not pure: {bad:?} has {} vertices, expected {dim}", bad.len())));
        }
        let mut seen = HashSet::new();
        for f in &facets {
            if f.vertices().any(|v| v >= num_vertices) {
                return Err(Error::InvalidComplex(format!("facet {f:?} uses an unknown vertex")));
            }
            if !seen.insert(*f) {
                return Err(Error::InvalidComplex(format!("duplicate facet {f:?}")));
            }
        }
        let mut neighbors = vec![Vec::new(); facets.len()];
        for (i, f) in facets.iter().enumerate() {
            for (j, e) in facets.iter().enumerate() {
                if i != j && f.intersection(e).len() + 1 == dim {
                    let x = f.difference(e).vertices().next().expect("one vertex differs");
                    neighbors[i].push((j, x));
                }
            }
        }
        Ok(PureComplex {
            num_vertices,
            dim,
            facets,
            neighbors,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Cardinality of every facet.
    pub fn facet_size(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> Face {
        self.facets[i]
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_index(&self, f: &Face) -> Option<usize> {
        self.facets.iter().position(|g| g == f)
    }

    /// Maximally intersecting facets `(E, x)` with `E ∩ F = F \ {x}`.
    pub fn neighbors(&self, f: usize) -> &[(usize, usize)] {
        &self.neighbors[f]
    }

    pub fn face_budget(&self) -> u64 {
        (self.facets.len() as u64).saturating_mul(1u64.checked_shl(self.dim as u32).unwrap_or(u64::MAX))
    }

    fn check_face_budget(&self) -> Result<()> {
        let size = self.face_budget();
        if size > FACE_LIMIT {
            return Err(Error::TooLarge {
                what: "complex (facets x 2^d)",
                size,
                limit: FACE_LIMIT,
            });
        }
        Ok(())
    }

    /// Every face, including the empty face.
    pub fn faces(&self) -> Result<HashSet<Face>> {
        self.check_face_budget()?;
        let mut out = HashSet::new();
        for f in &self.facets {
            out.extend(f.subsets());
        }
        Ok(out)
    }
}

/// A strict partial order on facet indices: generating relations plus a
/// lazily filled reachability table.
pub struct FacetOrder {
    len: usize,
    generators: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    below: Vec<OnceLock<FixedBitSet>>,
}

impl Clone for FacetOrder {
    fn clone(&self) -> Self {
        Self::build(self.len, self.generators.clone())
    }
}

impl fmt::Debug for FacetOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FacetOrder")
            .field("len", &self.len)
            .field("generators", &self.generators)
            .finish()
    }
}

impl FacetOrder {
    fn build(len: usize, mut generators: Vec<(usize, usize)>) -> Self {
        generators.sort_unstable();
        generators.dedup();
        let mut lower = vec![Vec::new(); len];
        for &(a, b) in &generators {
            lower[b].push(a);
        }
        FacetOrder {
            len,
            generators,
            lower,
            below: (0..len).map(|_| OnceLock::new()).collect(),
        }
    }

    /// The order generated by `a < b` for each `(a, b)`; cycles are rejected.
    pub fn from_relations(len: usize, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let rel: Vec<(usize, usize)> = relations.into_iter().collect();
        for &(a, b) in &rel {
            if a >= len || b >= len {
                return Err(Error::IndexOutOfRange {
                    index: a.max(b) as u64,
                    size: len as u64,
                });
            }
            if a == b {
                return Err(Error::NotAntisymmetric(a, b));
            }
        }
        let order = Self::build(len, rel);
        order.check_acyclic()?;
        Ok(order)
    }

    pub fn empty(len: usize) -> Self {
        Self::build(len, Vec::new())
    }

    /// The total order listing facets as in `sequence`.
    pub fn total(sequence: &[usize]) -> Result<Self> {
        let len = sequence.len();
        let mut seen = vec![false; len];
        for &f in sequence {
            if f >= len || std::mem::replace(&mut seen[f], true) {
                return Err(Error::InvalidArgument("not a permutation of the facets".into()));
            }
        }
        Ok(Self::build(len, sequence.windows(2).map(|w| (w[0], w[1])).collect()))
    }

    fn check_acyclic(&self) -> Result<()> {
        let mut upper = vec![Vec::new(); self.len];
        let mut indeg = vec![0usize; self.len];
        for &(a, b) in &self.generators {
            upper[a].push(b);
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..self.len).filter(|&i| indeg[i] == 0).collect();
        let mut done = 0;
        while let Some(a) = stack.pop() {
            done += 1;
            for &b in &upper[a] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
        if done == self.len {
            return Ok(());
        }
        // walk down inside the leftover subgraph until a node repeats
        let mut cur = (0..self.len).find(|&i| indeg[i] > 0).expect("cycle exists");
        let mut visited = HashSet::new();
        loop {
            visited.insert(cur);
            let next = self.lower[cur]
                .iter()
                .copied()
                .find(|&a| indeg[a] > 0)
                .expect("every leftover node has a leftover lower neighbour");
            if visited.contains(&next) {
                return Err(Error::NotAntisymmetric(next, cur));
            }
            cur = next;
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// Every `a < b`.
    pub fn strictly_below(&self, b: usize) -> &FixedBitSet {
        self.below[b].get_or_init(|| {
            let mut seen = FixedBitSet::with_capacity(self.len);
            let mut stack = self.lower[b].clone();
            while let Some(a) = stack.pop() {
                if !seen.put(a) {
                    stack.extend(&self.lower[a]);
                }
            }
            seen
        })
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.strictly_below(b).contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    /// Every strict relation `(a, b)` with `a < b`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.len)
            .flat_map(|b| self.strictly_below(b).ones().map(move |a| (a, b)).collect::<Vec<_>>())
            .collect()
    }

    /// Cover relations of the closure (the Hasse diagram).
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len {
            let below = self.strictly_below(b);
            let mut implied = FixedBitSet::with_capacity(self.len);
            for c in below.ones() {
                implied.union_with(self.strictly_below(c));
            }
            out.extend(below.difference(&implied).map(|a| (a, b)));
        }
        out.sort_unstable();
        out
    }

    /// The opposite order.
    pub fn reversed(&self) -> Self {
        Self::build(self.len, self.generators.iter().map(|&(a, b)| (b, a)).collect())
    }

    /// This order with `extra` relations added; fails if a cycle appears.
    pub fn with_relations(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_relations(self.len, self.generators.iter().copied().chain(extra))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len).filter(|&b| self.lower[b].is_empty()).collect()
    }
}

/// Restriction `r(F) = {x ∈ F : some E < F has E ∩ F = F \ {x}}`.
pub fn restriction(complex: &PureComplex, order: &FacetOrder, f: usize) -> Face {
    let bits = complex
        .neighbors(f)
        .iter()
        .filter(|&&(e, _)| order.lt(e, f))
        .fold(0u128, |m, &(_, x)| m | 1 << x);
    Face(bits)
}

/// The map `F -> r(F)` defining the intervals `[r(F), F]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partitioning {
    pub restrictions: Vec<Face>,
}

pub fn partition_intervals(complex: &PureComplex, order: &FacetOrder) -> Partitioning {
    Partitioning {
        restrictions: (0..complex.num_facets()).map(|f| restriction(complex, order, f)).collect(),
    }
}

/// A face covered by the wrong number of intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceWitness {
    pub face: Face,
    /// facets whose interval contains the face
    pub intervals: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub ok: bool,
    pub witness: Option<FaceWitness>,
}

/// Confirms every face lies in exactly one interval `[r(F), F]`.
pub fn verify_partitioning(complex: &PureComplex, p: &Partitioning) -> Result<PartitionCheck> {
    if p.restrictions.len() != complex.num_facets() {
        return Err(Error::InvalidArgument("one restriction per facet required".into()));
    }
    let faces = complex.faces()?;
    let mut cover: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, (r, f)) in p.restrictions.iter().zip(complex.facets()).enumerate() {
        if !r.is_subset(f) {
            return Ok(PartitionCheck {
                ok: false,
                witness: Some(FaceWitness {
                    face: *r,
                    intervals: vec![i],
                }),
            });
        }
        for sub in f.difference(r).subsets() {
            cover.entry(r.union(&sub)).or_default().push(i);
        }
    }
    let mut bad: Vec<FaceWitness> = faces
        .iter()
        .filter_map(|face| {
            let intervals = cover.get(face).cloned().unwrap_or_default();
            (intervals.len() != 1).then_some(FaceWitness { face: *face, intervals })
        })
        .collect();
    bad.sort_by_key(|w| (w.face.len(), w.face));
    Ok(PartitionCheck {
        ok: bad.is_empty(),
        witness: bad.into_iter().next(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Pair { f: usize, g: usize },
    Face(FaceWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Condition {
    fn from_pair(pair: Option<(usize, usize)>) -> Self {
        Condition {
            holds: pair.is_none(),
            witness: pair.map(|(f, g)| Witness::Pair { f, g }),
        }
    }
}

/// The four equivalent pre-shelling conditions, each evaluated on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreshellingReport {
    /// (i) `r(F) ⊆ G` and `r(G) ⊆ F` imply `F = G`
    pub mutual_restriction: Condition,
    /// (ii) the intervals `[r(F), F]` partition the complex
    pub disjoint_intervals: Condition,
    /// (iii) `r(F) ⊆ G` implies `F ≤ G`
    pub restriction_implies_order: Condition,
    /// (iv) if `F ≱ G` some `E < G` and `x ∈ G` give `F ∩ G ⊆ E ∩ G = G \ {x}`
    pub shelling_step: Condition,
}

impl PreshellingReport {
    pub fn verdicts(&self) -> [bool; 4] {
        [
            self.mutual_restriction.holds,
            self.disjoint_intervals.holds,
            self.restriction_implies_order.holds,
            self.shelling_step.holds,
        ]
    }

    pub fn is_preshelling(&self) -> bool {
        self.verdicts().iter().all(|&v| v)
    }

    /// Whether the four verdicts coincide.
    pub fn consistent(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&x| x == v[0])
    }
}

/// Some `E < G` with `F ∩ G ⊆ E ∩ G = G \ {x}`.
fn has_shelling_step(complex: &PureComplex, order: &FacetOrder, f: usize, g: usize) -> bool {
    let meet = complex.facet(f).intersection(&complex.facet(g));
    complex
        .neighbors(g)
        .iter()
        .any(|&(e, _)| order.lt(e, g) && meet.is_subset(&complex.facet(e)))
}

pub fn check_preshelling(complex: &PureComplex, order: &FacetOrder) -> Result<PreshellingReport> {
    if order.len() != complex.num_facets() {
        return Err(Error::LengthMismatch {
            left: order.len(),
            right: complex.num_facets(),
        });
    }
    complex.check_face_budget()?;
    let m = complex.num_facets();
    let p = partition_intervals(complex, order);
    let r = &p.restrictions;
    let facets = complex.facets();
    let pairs = || (0..m).flat_map(|f| (0..m).map(move |g| (f, g)));

    let mutual = pairs().find(|&(f, g)| f != g && r[f].is_subset(&facets[g]) && r[g].is_subset(&facets[f]));
    let implies = pairs().find(|&(f, g)| r[f].is_subset(&facets[g]) && !order.leq(f, g));
    let step = pairs().find(|&(f, g)| !order.leq(g, f) && !has_shelling_step(complex, order, f, g));
    let check = verify_partitioning(complex, &p)?;

    Ok(PreshellingReport {
        mutual_restriction: Condition::from_pair(mutual),
        disjoint_intervals: Condition {
            holds: check.ok,
            witness: check.witness.map(Witness::Face),
        },
        restriction_implies_order: Condition::from_pair(implies),
        shelling_step: Condition::from_pair(step),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShellingCheck {
    pub is_shelling: bool,
    /// first pair `F` before `G` admitting no `E`, `x`
    pub violation: Option<(usize, usize)>,
}

/// Checks the shelling condition for a total order given as a facet sequence.
pub fn is_shelling(complex: &PureComplex, sequence: &[usize]) -> Result<ShellingCheck> {
    if sequence.len() != complex.num_facets() {
        return Err(Error::LengthMismatch {
            left: sequence.len(),
            right: complex.num_facets(),
        });
    }
    let order = FacetOrder::total(sequence)?;
    for (j, &g) in sequence.iter().enumerate() {
        for &f in &sequence[..j] {
            if !has_shelling_step(complex, &order, f, g) {
                return Ok(ShellingCheck {
                    is_shelling: false,
                    violation: Some((f, g)),
                });
            }
        }
    }
    Ok(ShellingCheck {
        is_shelling: true,
        violation: None,
    })
}

/// A linear extension built by repeatedly picking a random minimal element.
pub fn random_linear_extension<R: Rng>(order: &FacetOrder, rng: &mut R) -> Vec<usize> {
    let n = order.len();
    let mut indeg: Vec<usize> = (0..n).map(|b| order.lower[b].len()).collect();
    let mut upper = vec![Vec::new(); n];
    for &(a, b) in order.generators() {
        upper[a].push(b);
    }
    let mut ready: Vec<usize> = (0..n).filter(|&b| indeg[b] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while !ready.is_empty() {
        let pick = rng.gen_range(0..ready.len());
        let a = ready.swap_remove(pick);
        out.push(a);
        for &b in &upper[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.push(b);
            }
        }
    }
    out
}

/// A random partial order on `len` elements: a random permutation with each
/// forward pair related with probability `density`.
pub fn random_order<R: Rng>(len: usize, density: f64, rng: &mut R) -> FacetOrder {
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(rng);
    let mut rel = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            if rng.gen_bool(density) {
                rel.push((perm[i], perm[j]));
            }
        }
    }
    FacetOrder::build(len, rel)
}

/// An order containing `order`: its generators plus `extra` random pairs
/// compatible with a random linear extension.
pub fn random_superorder<R: Rng>(order: &FacetOrder, extra: usize, rng: &mut R) -> FacetOrder {
    let ext = random_linear_extension(order, rng);
    let n = ext.len();
    let mut rel = order.generators().to_vec();
    if n >= 2 {
        for _ in 0..extra {
            let i = rng.gen_range(0..n - 1);
            let j = rng.gen_range(i + 1..n);
            rel.push((ext[i], ext[j]));
        }
    }
    FacetOrder::build(order.len(), rel)
}

/// The order complex of the proper part of a graded bounded poset: facets
/// are the maximal chains with bottom and top removed.
#[derive(Clone, Debug)]
pub struct OrderComplex {
    complex: PureComplex,
    /// vertex -> poset element
    elements: Vec<usize>,
    /// vertex -> rank
    ranks: Vec<usize>,
}

impl OrderComplex {
    pub fn complex(&self) -> &PureComplex {
        &self.complex
    }

    pub fn element(&self, vertex: usize) -> usize {
        self.elements[vertex]
    }

    pub fn vertex_of(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == element)
    }

    pub fn vertex_rank(&self, vertex: usize) -> usize {
        self.ranks[vertex]
    }

    /// `ρ(face)`.
    pub fn rank_set(&self, face: &Face) -> RankSubset {
        RankSubset::from_bits(face.vertices().fold(0u64, |m, v| m | 1 << self.ranks[v]))
    }

    fn with_facets(&self, facets: Vec<Face>) -> Result<Self> {
        Ok(OrderComplex {
            complex: PureComplex::new(self.complex.num_vertices(), facets)?,
            elements: self.elements.clone(),
            ranks: self.ranks.clone(),
        })
    }
}

pub fn order_complex(l: &GradedBoundedPoset) -> Result<OrderComplex> {
    let proper: Vec<usize> = (0..l.len()).filter(|&a| a != l.bottom() && a != l.top()).collect();
    if proper.len() > MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "proper part",
            size: proper.len() as u64,
            limit: MAX_VERTICES as u64,
        });
    }
    let mut vertex = vec![usize::MAX; l.len()];
    for (v, &a) in proper.iter().enumerate() {
        vertex[a] = v;
    }
    let mut facets = Vec::new();
    let mut stack = vec![(l.bottom(), 0u128)];
    while let Some((a, chain)) = stack.pop() {
        for &b in l.poset().upper_covers(a) {
            if b == l.top() {
                facets.push(Face(chain));
            } else {
                stack.push((b, chain | 1 << vertex[b]));
            }
        }
    }
    facets.sort_unstable();
    Ok(OrderComplex {
        complex: PureComplex::new(proper.len(), facets)?,
        ranks: proper.iter().map(|&a| l.rank(a)).collect(),
        elements: proper,
    })
}

/// `β(S) = #{maximal chains c : ρ(r(c)) = S}` read off a partitioning.
pub fn flag_h_from_partition(oc: &OrderComplex, p: &Partitioning) -> BTreeMap<RankSubset, u64> {
    let mut out = BTreeMap::new();
    for r in &p.restrictions {
        *out.entry(oc.rank_set(r)).or_insert(0) += 1;
    }
    out
}

/// The order complex of `J(2 × n)` with facet `i` identified with the `i`-th
/// Dyck path in lexicographic order.
#[derive(Clone, Debug)]
pub struct DyckComplex {
    n: usize,
    lattice: IdealLattice,
    oc: OrderComplex,
    paths: Vec<DyckPath>,
}

impl DyckComplex {
    pub fn new(n: usize) -> Result<Self> {
        let lattice = ideal_lattice(&chain_product_2xn(n)?)?;
        let generic = order_complex(lattice.lattice())?;
        let mut partial = DyckComplex {
            n,
            lattice,
            oc: generic.clone(),
            paths: Vec::new(),
        };
        let mut keyed = generic
            .complex()
            .facets()
            .iter()
            .map(|f| Ok((partial.facet_to_path(f)?, *f)))
            .collect::<Result<Vec<_>>>()?;
        keyed.sort_unstable_by_key(|&(w, _)| w);
        partial.oc = generic.with_facets(keyed.iter().map(|&(_, f)| f).collect())?;
        partial.paths = keyed.into_iter().map(|(w, _)| w).collect();
        Ok(partial)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    pub fn order_complex(&self) -> &OrderComplex {
        &self.oc
    }

    pub fn complex(&self) -> &PureComplex {
        self.oc.complex()
    }

    /// Paths in facet order.
    pub fn paths(&self) -> &[DyckPath] {
        &self.paths
    }

    pub fn facet_of(&self, w: &DyckPath) -> usize {
        w.rank() as usize
    }

    /// The path whose `i`-th step is `V` when the rank-`i` ideal of the chain
    /// gains an element of `C_1`, `H` for `C_2`.
    pub fn facet_to_path(&self, face: &Face) -> Result<DyckPath> {
        let n = self.n;
        let mut by_rank = vec![None; 2 * n + 1];
        by_rank[0] = Some(0u64);
        by_rank[2 * n] = Some((1u64 << (2 * n)) - 1);
        for v in face.vertices() {
            let r = self.oc.vertex_rank(v);
            if by_rank[r].replace(self.lattice.ideal(self.oc.element(v))).is_some() {
                return Err(Error::NotMaximalChain);
            }
        }
        let mut hmask = 0u64;
        for i in 1..=2 * n {
            let (Some(prev), Some(cur)) = (by_rank[i - 1], by_rank[i]) else {
                return Err(Error::NotMaximalChain);
            };
            if prev & !cur != 0 || (cur & !prev).count_ones() != 1 {
                return Err(Error::NotMaximalChain);
            }
            if (cur & !prev).trailing_zeros() as usize >= n {
                hmask |= 1 << i;
            }
        }
        Ok(DyckPath::from_mask_unchecked(n, hmask))
    }

    pub fn path_to_facet(&self, w: &DyckPath) -> Result<Face> {
        if w.semilength() != self.n {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: 2 * self.n,
            });
        }
        let (mut vs, mut hs) = (0, 0);
        let mut ideal = 0u64;
        let mut face = 0u128;
        for (i, s) in w.steps().enumerate().take(2 * self.n - 1) {
            match s {
                crate::dyck::Step::V => {
                    ideal |= 1 << vs;
                    vs += 1;
                }
                crate::dyck::Step::H => {
                    ideal |= 1 << (self.n + hs);
                    hs += 1;
                }
            }
            let element = self.lattice.index_of(ideal).ok_or(Error::NotMaximalChain)?;
            let v = self.oc.vertex_of(element).ok_or(Error::NotMaximalChain)?;
            debug_assert_eq!(self.oc.vertex_rank(v), i + 1);
            face |= 1 << v;
        }
        Ok(Face(face))
    }
}

/// `s_i`: rewrites the factor at positions `i, i+1, i+2` from `vvh` to `vhv`
/// or from `hhv` to `hvh`; any other factor is left alone.
pub fn s_map(w: &DyckPath, i: usize) -> Result<DyckPath> {
    let max = w.len().saturating_sub(2);
    if i < 1 || i > max {
        return Err(Error::PositionOutOfRange { position: i, max });
    }
    let h = w.hmask();
    let factor = (h >> i) & 0b111;
    // bit 0 = position i; vvh = 0b100, hhv = 0b011
    if factor == 0b100 || factor == 0b011 {
        Ok(DyckPath::from_mask_unchecked(w.semilength(), h ^ (0b110 << i)))
    } else {
        Ok(*w)
    }
}

/// `(da(w), maj(w))`, compared lexicographically.
pub fn sigma_stat(w: &DyckPath) -> (usize, usize) {
    (w.da(), w.maj())
}

/// `Omega_n`: `u < w` when `u ≠ w` is obtained from `w` by a sequence of
/// `s_i` maps. Facet indices follow [`enumerate`].
pub fn omega_n(n: usize) -> Result<FacetOrder> {
    if n == 0 || n > OMEGA_LIMIT.min(MAX_SEMILENGTH) {
        return Err(Error::TooLarge {
            what: "semilength for Omega_n",
            size: n as u64,
            limit: OMEGA_LIMIT as u64,
        });
    }
    let paths = enumerate(n);
    let mut rel = Vec::new();
    for (idx, w) in paths.iter().enumerate() {
        for i in 1..=2 * n - 2 {
            let u = s_map(w, i)?;
            if u != *w {
                rel.push((u.rank() as usize, idx));
            }
        }
    }
    FacetOrder::from_relations(paths.len(), rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::{flag_h, FinitePoset, FlagVectors};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn face(v: &[usize]) -> Face {
        Face::from_vertices(v.iter().copied()).unwrap()
    }

    #[test]
    fn face_subsets() {
        let f = face(&[1, 4, 7]);
        let subs: Vec<Face> = f.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs.last(), Some(&f));
        assert_eq!(Face::EMPTY.subsets().count(), 1);
        assert!(Face::from_vertices([128]).is_err());
    }

    #[test]
    fn complex_validation() {
        assert!(PureComplex::new(3, vec![face(&[0, 1]), face(&[2])]).is_err());
        assert!(PureComplex::new(3, vec![face(&[0, 1]), face(&[0, 1])]).is_err());
        assert!(PureComplex::new(2, vec![face(&[0, 5])]).is_err());
        let c = PureComplex::new(3, vec![face(&[0, 1]), face(&[1, 2])]).unwrap();
        assert_eq!(c.neighbors(0), &[(1, 0)]);
        assert_eq!(c.faces().unwrap().len(), 6);
    }

    #[test]
    fn order_rejects_cycles() {
        assert!(matches!(
            FacetOrder::from_relations(3, [(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotAntisymmetric(..))
        ));
        assert!(FacetOrder::from_relations(2, [(0, 0)]).is_err());
        let o = FacetOrder::from_relations(4, [(0, 1), (1, 2), (0, 3)]).unwrap();
        assert!(o.lt(0, 2) && !o.lt(2, 0) && !o.lt(3, 2));
        assert_eq!(o.covers(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(o.relations().len(), 4);
    }

    #[test]
    fn order_complex_examples() {
        let chain = GradedBoundedPoset::new(FinitePoset::chain(3)).unwrap();
        let oc = order_complex(&chain).unwrap();
        assert_eq!(oc.complex().facets(), &[face(&[0])]);
        for (n, count) in [(2, 2), (3, 5), (4, 14), (5, 42)] {
            let dc = DyckComplex::new(n).unwrap();
            assert_eq!(dc.complex().num_facets(), count);
            assert_eq!(dc.complex().facet_size(), 2 * n - 1);
        }
    }

    #[test]
    fn facets_are_dyck_paths() {
        let one = DyckComplex::new(1).unwrap();
        assert_eq!(one.facet_to_path(&one.complex().facet(0)).unwrap(), w("vh"));
        let two = DyckComplex::new(2).unwrap();
        assert_eq!(two.paths(), &[w("vvhh"), w("vhvh")]);
        for n in 1..=6 {
            let dc = DyckComplex::new(n).unwrap();
            assert_eq!(dc.paths(), enumerate(n).as_slice());
            for (i, p) in dc.paths().iter().enumerate() {
                let f = dc.path_to_facet(p).unwrap();
                assert_eq!(f, dc.complex().facet(i));
                assert_eq!(dc.facet_to_path(&f).unwrap(), *p);
                assert_eq!(dc.facet_of(p), i);
            }
        }
        let dc = DyckComplex::new(3).unwrap();
        let f = dc.complex().facet(0);
        let short = Face(f.bits() & (f.bits() - 1));
        assert!(matches!(dc.facet_to_path(&short), Err(Error::NotMaximalChain)));
    }

    #[test]
    fn vvhh_chain_adds_c1_then_c2() {
        // the chain {(1,1)} ⊂ {(1,1),(1,2)} ⊂ {(1,1),(1,2),(2,1)}
        let dc = DyckComplex::new(2).unwrap();
        let ideals = [0b0001u64, 0b0011, 0b0111];
        let verts = ideals.iter().map(|&m| {
            let e = dc.lattice().index_of(m).unwrap();
            dc.order_complex().vertex_of(e).unwrap()
        });
        let f = Face::from_vertices(verts).unwrap();
        assert_eq!(dc.facet_to_path(&f).unwrap(), w("vvhh"));
    }

    #[test]
    fn s_map_examples() {
        for i in 1..=4 {
            assert_eq!(s_map(&w("vhvhvh"), i).unwrap(), w("vhvhvh"));
        }
        assert_eq!(s_map(&w("vvhvhh"), 1).unwrap(), w("vhvvhh"));
        assert_eq!(s_map(&w("vvhhvh"), 3).unwrap(), w("vvhvhh"));
        assert!(matches!(s_map(&w("vvhh"), 3), Err(Error::PositionOutOfRange { .. })));
        assert!(s_map(&w("vvhh"), 0).is_err());
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_stat(&w("vhvhvh")), (0, 6));
        assert_eq!(sigma_stat(&w("vvvhhh")), (2, 0));
        assert_eq!(sigma_stat(&w("vvhvhh")), (1, 3));
        assert_eq!(sigma_stat(&s_map(&w("vvhvhh"), 1).unwrap()), (1, 2));
    }

    #[test]
    fn sigma_strictly_decreases() {
        for n in 1..=7 {
            for p in enumerate(n) {
                for i in 1..=2 * n - 2 {
                    let q = s_map(&p, i).unwrap();
                    if q != p {
                        assert!(sigma_stat(&q) < sigma_stat(&p), "{p} s_{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn s_map_preserves_dyck_condition() {
        for n in 2..=7 {
            for p in enumerate(n) {
                for i in 1..=2 * n - 2 {
                    let q = s_map(&p, i).unwrap();
                    assert!(q.to_string().parse::<DyckPath>().is_ok());
                }
            }
        }
    }

    #[test]
    fn omega_minimum_is_alternating() {
        assert_eq!(omega_n(1).unwrap().len(), 1);
        assert!(omega_n(1).unwrap().generators().is_empty());
        for n in 1..=6 {
            let o = omega_n(n).unwrap();
            let paths = enumerate(n);
            let mins = o.minimal_elements();
            assert_eq!(mins.len(), 1);
            assert_eq!(paths[mins[0]], DyckPath::alternating(n));
            // unique minimum lies below everything else
            assert!((0..o.len()).all(|b| o.leq(mins[0], b)));
        }
    }

    #[test]
    fn omega_4_matches_figure() {
        let o = omega_n(4).unwrap();
        let paths = enumerate(4);
        let name = |i: usize| paths[i].to_string();
        let mut covers: Vec<(String, String)> = o.covers().into_iter().map(|(a, b)| (name(a), name(b))).collect();
        covers.sort();
        let mut expected: Vec<(String, String)> = [
            ("vvvhhvhh", "vvvhhhvh"),
            ("vvvhvhhh", "vvvvhhhh"),
            ("vvvhvhhh", "vvvhhvhh"),
            ("vvhhvhvh", "vvhhvvhh"),
            ("vvhvvhhh", "vvvhvhhh"),
            ("vvhvhhvh", "vvvhhhvh"),
            ("vvhvhhvh", "vvhhvhvh"),
            ("vhvvvhhh", "vvhvvhhh"),
            ("vvhvhvhh", "vvhvvhhh"),
            ("vvhvhvhh", "vvhvhhvh"),
            ("vhvvhhvh", "vvhvhhvh"),
            ("vhvvhvhh", "vvhvhvhh"),
            ("vhvvhvhh", "vhvvvhhh"),
            ("vhvvhvhh", "vhvvhhvh"),
            ("vhvhvvhh", "vhvvhvhh"),
            ("vhvhvhvh", "vhvhvvhh"),
        ]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
        expected.sort();
        assert_eq!(covers, expected);
    }

    #[test]
    fn restriction_examples() {
        let dc = DyckComplex::new(3).unwrap();
        let o = omega_n(3).unwrap();
        let min = dc.facet_of(&DyckPath::alternating(3));
        assert_eq!(restriction(dc.complex(), &o, min), Face::EMPTY);
        let stair = dc.facet_of(&w("vvvhhh"));
        let r = restriction(dc.complex(), &o, stair);
        assert_eq!(dc.order_complex().rank_set(&r).members(), vec![3]);
        let f = dc.facet_of(&w("vvhhvh"));
        let r = restriction(dc.complex(), &o, f);
        assert_eq!(dc.order_complex().rank_set(&r).members(), vec![2, 4]);
    }

    #[test]
    fn restriction_ranks_are_ls_sets() {
        for n in 1..=6 {
            let dc = DyckComplex::new(n).unwrap();
            let o = omega_n(n).unwrap();
            for (i, p) in dc.paths().iter().enumerate() {
                let r = restriction(dc.complex(), &o, i);
                assert_eq!(dc.order_complex().rank_set(&r), p.ls_set(), "{p}");
                // r(w) consists of the prefix points a_1 + ... + a_i, i ∈ LS(w)
                let facet = dc.complex().facet(i);
                assert!(r.is_subset(&facet));
            }
        }
    }

    #[test]
    fn single_facet_complex() {
        let c = PureComplex::new(3, vec![face(&[0, 1, 2])]).unwrap();
        let o = FacetOrder::empty(1);
        let rep = check_preshelling(&c, &o).unwrap();
        assert!(rep.is_preshelling());
        let p = partition_intervals(&c, &o);
        assert_eq!(p.restrictions, vec![Face::EMPTY]);
        assert!(verify_partitioning(&c, &p).unwrap().ok);
        assert!(is_shelling(&c, &[0]).unwrap().is_shelling);
    }

    #[test]
    fn omega_is_preshelling() {
        for n in 1..=5 {
            let dc = DyckComplex::new(n).unwrap();
            let rep = check_preshelling(dc.complex(), &omega_n(n).unwrap()).unwrap();
            assert!(rep.is_preshelling(), "n = {n}: {rep:?}");
        }
    }

    #[test]
    fn empty_order_fails_every_condition() {
        let dc = DyckComplex::new(3).unwrap();
        let rep = check_preshelling(dc.complex(), &FacetOrder::empty(5)).unwrap();
        assert_eq!(rep.verdicts(), [false; 4]);
        match &rep.disjoint_intervals.witness {
            Some(Witness::Face(w)) => assert_ne!(w.intervals.len(), 1),
            other => panic!("expected a face witness, got {other:?}"),
        }
    }

    #[test]
    fn verdicts_agree_on_random_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            let dc = DyckComplex::new(n).unwrap();
            let m = dc.complex().num_facets();
            let omega = omega_n(n).unwrap();
            let mut orders = vec![omega.reversed(), FacetOrder::empty(m)];
            for d in [0.1, 0.3, 0.6, 0.9] {
                orders.push(random_order(m, d, &mut rng));
            }
            for o in orders {
                let rep = check_preshelling(dc.complex(), &o).unwrap();
                assert!(rep.consistent(), "{rep:?}");
            }
        }
    }

    #[test]
    fn interval_counting_identity() {
        for n in 1..=5 {
            let dc = DyckComplex::new(n).unwrap();
            let p = partition_intervals(dc.complex(), &omega_n(n).unwrap());
            let d = dc.complex().facet_size();
            let total: u64 = p.restrictions.iter().map(|r| 1u64 << (d - r.len())).sum();
            assert_eq!(total as usize, dc.complex().faces().unwrap().len());
            assert!(verify_partitioning(dc.complex(), &p).unwrap().ok);
        }
    }

    #[test]
    fn partition_yields_flag_h() {
        let one = DyckComplex::new(1).unwrap();
        let p1 = partition_intervals(one.complex(), &omega_n(1).unwrap());
        assert_eq!(flag_h_from_partition(one.order_complex(), &p1), BTreeMap::from([(RankSubset::EMPTY, 1)]));

        let three = DyckComplex::new(3).unwrap();
        let p3 = partition_intervals(three.complex(), &omega_n(3).unwrap());
        let b = flag_h_from_partition(three.order_complex(), &p3);
        let s = |m: &[usize]| RankSubset::from_members(m.iter().copied()).unwrap();
        assert_eq!(
            b,
            BTreeMap::from([(s(&[]), 1), (s(&[2]), 1), (s(&[3]), 1), (s(&[4]), 1), (s(&[2, 4]), 1)])
        );

        for n in 1..=5 {
            let dc = DyckComplex::new(n).unwrap();
            let p = partition_intervals(dc.complex(), &omega_n(n).unwrap());
            let from_partition = flag_h_from_partition(dc.order_complex(), &p);
            let flags = FlagVectors::compute(dc.lattice().lattice()).unwrap();
            for (s, beta) in flags.beta_entries() {
                let got = from_partition.get(&s).copied().unwrap_or(0) as i128;
                assert_eq!(got, beta);
                if n <= 3 {
                    assert_eq!(flag_h(dc.lattice().lattice(), &s).unwrap(), beta);
                }
            }
        }
    }

    #[test]
    fn linear_extensions_of_omega_are_shellings() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=5 {
            let dc = DyckComplex::new(n).unwrap();
            let o = omega_n(n).unwrap();
            let base = partition_intervals(dc.complex(), &o);
            for _ in 0..10 {
                let ext = random_linear_extension(&o, &mut rng);
                assert!(is_shelling(dc.complex(), &ext).unwrap().is_shelling);
                let total = FacetOrder::total(&ext).unwrap();
                assert_eq!(partition_intervals(dc.complex(), &total), base);
            }
        }
    }

    #[test]
    fn superorders_stay_preshellings() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=4 {
            let dc = DyckComplex::new(n).unwrap();
            let o = omega_n(n).unwrap();
            let base = partition_intervals(dc.complex(), &o);
            for extra in [1, 3, 10] {
                let bigger = random_superorder(&o, extra, &mut rng);
                assert!(check_preshelling(dc.complex(), &bigger).unwrap().is_preshelling());
                assert_eq!(partition_intervals(dc.complex(), &bigger), base);
            }
        }
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let head = rest.remove(i);
            for mut tail in permutations(&rest) {
                tail.insert(0, head);
                out.push(tail);
            }
        }
        out
    }

    #[test]
    fn every_shelling_is_a_preshelling() {
        let dc = DyckComplex::new(3).unwrap();
        let mut shellings = 0;
        let mut violating = None;
        for perm in permutations(&[0, 1, 2, 3, 4]) {
            let check = is_shelling(dc.complex(), &perm).unwrap();
            if check.is_shelling {
                shellings += 1;
                let rep = check_preshelling(dc.complex(), &FacetOrder::total(&perm).unwrap()).unwrap();
                assert!(rep.is_preshelling());
            } else {
                assert!(check.violation.is_some());
                violating.get_or_insert(perm);
            }
        }
        assert!(shellings > 0);
        // some total order of the 5 facets is not a shelling
        let bad = violating.expect("a non-shelling order exists");
        assert!(!is_shelling(dc.complex(), &bad).unwrap().is_shelling);
    }

    #[test]
    fn generators_are_not_all_covers() {
        for n in 1..=6 {
            let o = omega_n(n).unwrap();
            let gens: HashSet<_> = o.generators().iter().copied().collect();
            assert!(o.covers().iter().all(|c| gens.contains(c)));
        }
        // s_1(vvhhvh) = vhvhvh, but vhvhvh < vvhvhh = s_3(vvhhvh)
        let o = omega_n(3).unwrap();
        let (lo, hi) = (w("vhvhvh").rank() as usize, w("vvhhvh").rank() as usize);
        assert!(o.generators().contains(&(lo, hi)));
        assert!(!o.covers().contains(&(lo, hi)));
    }

    #[test]
    fn face_budget_guard() {
        let dc = DyckComplex::new(7).unwrap();
        assert!(matches!(
            check_preshelling(dc.complex(), &omega_n(7).unwrap()),
            Err(Error::TooLarge { .. })
        ));
        assert!(omega_n(9).is_err());
    }
}
