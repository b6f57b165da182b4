//! Dyck paths and their statistics.
//!
//! A path of semilength `n` is a word of `n` vertical steps `V` and `n`
//! horizontal steps `H` in which no prefix has more `H` than `V`. Positions
//! are 1-based. Words are bit-packed: bit `p` of the mask is set when the
//! step at position `p` is `H`, so every positional statistic is a couple of
//! shifts and masks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;

/// Largest supported semilength (positions must fit in a `u64` mask).
pub const MAX_SEMILENGTH: usize = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    V,
    H,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::V => 'v',
            Step::H => 'h',
        }
    }
}

fn range_mask(lo: usize, hi: usize) -> u64 {
    if hi < lo {
        return 0;
    }
    let upper = if hi >= 63 { u64::MAX } else { (1u64 << (hi + 1)) - 1 };
    upper & !((1u64 << lo) - 1)
}

/// A Dyck path, stored as a bit mask over positions `1..=2n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyckPath {
    n: u8,
    hmask: u64,
}

impl DyckPath {
    pub fn empty() -> Self {
        DyckPath { n: 0, hmask: 0 }
    }

    /// Validates a step sequence.
    pub fn new(steps: &[Step]) -> Result<Self> {
        if !steps.len().is_multiple_of(2) {
            return Err(Error::InvalidPath(format!("odd length {}", steps.len())));
        }
        let n = steps.len() / 2;
        if n > MAX_SEMILENGTH {
            return Err(Error::TooLarge {
                what: "semilength",
                size: n as u64,
                limit: MAX_SEMILENGTH as u64,
            });
        }
        let mut height = 0i64;
        let mut hmask = 0u64;
        for (i, &s) in steps.iter().enumerate() {
            match s {
                Step::V => height += 1,
                Step::H => {
                    height -= 1;
                    hmask |= 1 << (i + 1);
                }
            }
            if height < 0 {
                return Err(Error::InvalidPath(format!("prefix of length {} dips below the diagonal", i + 1)));
            }
        }
        if height != 0 {
            return Err(Error::InvalidPath("unequal numbers of v and h".into()));
        }
        Ok(DyckPath { n: n as u8, hmask })
    }

    pub(crate) fn from_mask_unchecked(n: usize, hmask: u64) -> Self {
        debug_assert!(n <= MAX_SEMILENGTH);
        DyckPath { n: n as u8, hmask }
    }

    pub(crate) fn hmask(&self) -> u64 {
        self.hmask
    }

    /// `V^n H^n`.
    pub fn staircase(n: usize) -> Self {
        assert!(n <= MAX_SEMILENGTH);
        DyckPath {
            n: n as u8,
            hmask: range_mask(n + 1, 2 * n),
        }
    }

    /// `(VH)^n`.
    pub fn alternating(n: usize) -> Self {
        assert!(n <= MAX_SEMILENGTH);
        let hmask = (1..=n).fold(0u64, |m, i| m | 1 << (2 * i));
        DyckPath { n: n as u8, hmask }
    }

    pub fn semilength(&self) -> usize {
        self.n as usize
    }

    /// Number of steps, `2n`.
    pub fn len(&self) -> usize {
        2 * self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Step at 1-based position `pos`.
    pub fn step(&self, pos: usize) -> Step {
        assert!((1..=self.len()).contains(&pos), "position {pos} out of range");
        if self.hmask >> pos & 1 == 1 {
            Step::H
        } else {
            Step::V
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Step> + '_ {
        (1..=self.len()).map(move |p| self.step(p))
    }

    fn vmask(&self) -> u64 {
        !self.hmask & range_mask(1, self.len())
    }

    fn interior(&self) -> u64 {
        range_mask(1, self.len().saturating_sub(1))
    }

    /// Valley positions: `i` with `w_i = H`, `w_{i+1} = V`.
    pub fn descent_set(&self) -> RankSubset {
        RankSubset(self.hmask & (self.vmask() >> 1) & self.interior())
    }

    pub fn des(&self) -> usize {
        self.descent_set().len()
    }

    pub fn maj(&self) -> usize {
        self.descent_set().sum()
    }

    /// Peaks `VH` at position `i` (the `V`) whose prefix `w_1..w_i` has at
    /// least two more `V` than `H`.
    pub fn high_peak_set(&self) -> RankSubset {
        let peaks = self.vmask() & (self.hmask >> 1);
        let mut set = 0u64;
        let mut height = 0i64;
        for pos in 1..=self.len() {
            height += if self.hmask >> pos & 1 == 1 { -1 } else { 1 };
            if peaks >> pos & 1 == 1 && height >= 2 {
                set |= 1 << pos;
            }
        }
        RankSubset(set)
    }

    pub fn hp(&self) -> usize {
        self.high_peak_set().len()
    }

    /// Number of `V` steps at even positions.
    pub fn ea(&self) -> usize {
        const EVEN: u64 = 0x5555_5555_5555_5554;
        (self.vmask() & EVEN).count_ones() as usize
    }

    /// Centers `i` of the factors `a_{i-1} a_i a_{i+1}` equal to `vvh` or `hhv`.
    pub fn ls_set(&self) -> RankSubset {
        let v = self.vmask();
        let h = self.hmask;
        let vvh = (v << 1) & v & (h >> 1);
        let hhv = (h << 1) & h & (v >> 1);
        RankSubset((vvh | hhv) & self.interior())
    }

    pub fn lnfs(&self) -> usize {
        self.ls_set().len()
    }

    pub fn maj_l(&self) -> usize {
        self.ls_set().sum()
    }

    /// Number of double ascents `VV`.
    pub fn da(&self) -> usize {
        let v = self.vmask();
        (v & (v >> 1)).count_ones() as usize
    }

    pub fn label(&self) -> LabeledPath {
        let mut vs = 0;
        let mut hs = 0;
        let labels = self
            .steps()
            .map(|s| match s {
                Step::V => {
                    vs += 1;
                    Label::V(vs)
                }
                Step::H => {
                    hs += 1;
                    Label::H(hs)
                }
            })
            .collect();
        LabeledPath { path: *self, labels }
    }

    /// Descent set with respect to a reference path: positions `i` such that
    /// the labelled letter `w_{i+1}` occurs before `w_i` in `reference`.
    pub fn descent_set_wrt(&self, reference: &DyckPath) -> Result<RankSubset> {
        ReferenceOrder::new(reference).descent_set(self)
    }

    pub fn des_wrt(&self, reference: &DyckPath) -> Result<usize> {
        Ok(self.descent_set_wrt(reference)?.len())
    }

    pub fn maj_wrt(&self, reference: &DyckPath) -> Result<usize> {
        Ok(self.descent_set_wrt(reference)?.sum())
    }

    /// Index of this path in the lexicographic (`V < H`) listing of its
    /// semilength.
    pub fn rank(&self) -> u64 {
        let n = self.semilength();
        let table = completions(n);
        let mut index = 0u64;
        let mut height = 0usize;
        for pos in 1..=self.len() {
            let remaining = self.len() - pos;
            match self.step(pos) {
                Step::V => height += 1,
                Step::H => {
                    index += table[remaining][height + 1];
                    height -= 1;
                }
            }
        }
        index
    }
}

impl PartialOrd for DyckPath {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Semilength first, then lexicographic with `V < H`.
impl Ord for DyckPath {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.hmask.reverse_bits()).cmp(&(other.n, other.hmask.reverse_bits()))
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.steps() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({self})")
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Parses a word over `{v, h}` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'v' | 'V' => Ok(Step::V),
                'h' | 'H' => Ok(Step::H),
                other => Err(Error::InvalidPath(format!("unexpected letter `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(&steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of `{1, ..., 63}`, used for descent sets and rank selections.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSubset(u64);

impl RankSubset {
    pub const EMPTY: RankSubset = RankSubset(0);

    pub fn from_bits(bits: u64) -> Self {
        RankSubset(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    /// Builds a subset; members must lie in `1..=63`.
    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut bits = 0u64;
        for m in members {
            if !(1..=63).contains(&m) {
                return Err(Error::RankOutOfRange { rank: m, max: 63 });
            }
            bits |= 1 << m;
        }
        Ok(RankSubset(bits))
    }

    /// All subsets of `{1, ..., max}` in increasing bit order.
    pub fn all_within(max: usize) -> impl Iterator<Item = RankSubset> {
        assert!(max < 63);
        (0u64..1 << max).map(|b| RankSubset(b << 1))
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn sum(&self) -> usize {
        self.iter().sum()
    }

    pub fn max_member(&self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset(&self, other: &RankSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..64).filter(move |&i| self.contains(i))
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for RankSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for RankSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RankSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for RankSubset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        RankSubset::from_members(members).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    V(usize),
    H(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::V(i) => write!(f, "v{i}"),
            Label::H(j) => write!(f, "h{j}"),
        }
    }
}

/// A path whose steps carry their occurrence index: the `i`-th `V` is `v_i`
/// and the `j`-th `H` is `h_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPath {
    path: DyckPath,
    labels: Vec<Label>,
}

impl LabeledPath {
    pub fn path(&self) -> &DyckPath {
        &self.path
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.labels {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Position of every labelled letter inside a reference path, precomputed so
/// descent sets with respect to it cost one pass per path.
#[derive(Clone, Debug)]
pub struct ReferenceOrder {
    reference: DyckPath,
    v_pos: Vec<usize>,
    h_pos: Vec<usize>,
}

impl ReferenceOrder {
    pub fn new(reference: &DyckPath) -> Self {
        let n = reference.semilength();
        let mut v_pos = vec![0; n + 1];
        let mut h_pos = vec![0; n + 1];
        for (i, l) in reference.label().labels().iter().enumerate() {
            match *l {
                Label::V(j) => v_pos[j] = i + 1,
                Label::H(j) => h_pos[j] = i + 1,
            }
        }
        ReferenceOrder {
            reference: *reference,
            v_pos,
            h_pos,
        }
    }

    pub fn reference(&self) -> &DyckPath {
        &self.reference
    }

    pub fn descent_set(&self, w: &DyckPath) -> Result<RankSubset> {
        if w.len() != self.reference.len() {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.reference.len(),
            });
        }
        let mut vs = 0;
        let mut hs = 0;
        let mut prev = 0;
        let mut bits = 0u64;
        for pos in 1..=w.len() {
            let here = match w.step(pos) {
                Step::V => {
                    vs += 1;
                    self.v_pos[vs]
                }
                Step::H => {
                    hs += 1;
                    self.h_pos[hs]
                }
            };
            if pos > 1 && here < prev {
                bits |= 1 << (pos - 1);
            }
            prev = here;
        }
        Ok(RankSubset(bits))
    }
}

/// `table[r][h]`: number of ways to finish a Dyck path with `r` steps left
/// from height `h`.
fn completions(n: usize) -> Vec<Vec<u64>> {
    let len = 2 * n;
    let mut table = vec![vec![0u64; len + 2]; len + 1];
    table[0][0] = 1;
    for r in 1..=len {
        for h in 0..=len {
            let up = table[r - 1][h + 1];
            let down = if h > 0 { table[r - 1][h - 1] } else { 0 };
            table[r][h] = up + down;
        }
    }
    table
}

/// Catalan number `C(n)` as a machine integer.
pub fn catalan_u64(n: usize) -> u64 {
    assert!(n <= MAX_SEMILENGTH);
    completions(n)[2 * n][0]
}

/// Every Dyck path of semilength `n`, in lexicographic order with `V < H`.
pub fn enumerate(n: usize) -> Vec<DyckPath> {
    assert!(n <= MAX_SEMILENGTH, "semilength {n} unsupported");
    let mut out = Vec::with_capacity(catalan_u64(n) as usize);
    // (position about to be written, height, mask so far)
    let mut stack = vec![(1usize, 0usize, 0u64)];
    let len = 2 * n;
    while let Some((pos, height, mask)) = stack.pop() {
        if pos > len {
            out.push(DyckPath::from_mask_unchecked(n, mask));
            continue;
        }
        let remaining = len - pos + 1;
        // push H first so V is popped first
        if height > 0 {
            stack.push((pos + 1, height - 1, mask | 1 << pos));
        }
        if height < remaining - 1 {
            stack.push((pos + 1, height + 1, mask));
        }
    }
    out
}

/// Inverse of [`DyckPath::rank`].
pub fn unrank(n: usize, index: u64) -> Result<DyckPath> {
    if n > MAX_SEMILENGTH {
        return Err(Error::TooLarge {
            what: "semilength",
            size: n as u64,
            limit: MAX_SEMILENGTH as u64,
        });
    }
    let table = completions(n);
    let total = table[2 * n][0];
    if index >= total {
        return Err(Error::IndexOutOfRange { index, size: total });
    }
    let mut index = index;
    let mut height = 0usize;
    let mut mask = 0u64;
    for pos in 1..=2 * n {
        let remaining = 2 * n - pos;
        let with_v = table[remaining][height + 1];
        if index < with_v {
            height += 1;
        } else {
            index -= with_v;
            mask |= 1 << pos;
            height -= 1;
        }
    }
    Ok(DyckPath::from_mask_unchecked(n, mask))
}

/// A uniformly random path drawn from `rng`.
pub fn random_path_with<R: Rng>(n: usize, rng: &mut R) -> DyckPath {
    let index = rng.gen_range(0..catalan_u64(n));
    unrank(n, index).expect("index drawn below the Catalan number")
}

/// A uniformly random path, reproducible from `seed`.
pub fn random_path(n: usize, seed: u64) -> DyckPath {
    random_path_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Path statistics that refine the Catalan numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statistic {
    Des,
    Hp,
    Ea,
    Lnfs,
    Da,
    /// Descents with respect to a reference path.
    DesW(DyckPath),
}

type Evaluator = Box<dyn Fn(&DyckPath) -> usize + Sync>;

/// Major-index style companions of a [`Statistic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoStatistic {
    Maj,
    MajL,
    /// Sum of high-peak positions (equal to `MajW` for `W = (VH)^n`).
    HpMaj,
    MajW(DyckPath),
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Des => "des",
            Statistic::Hp => "hp",
            Statistic::Ea => "ea",
            Statistic::Lnfs => "lnfs",
            Statistic::Da => "da",
            Statistic::DesW(_) => "des-w",
        }
    }

    /// The co-statistic with which this statistic is q-Narayana distributed,
    /// if one is known.
    pub fn paired_costatistic(&self) -> Option<CoStatistic> {
        match self {
            Statistic::Des => Some(CoStatistic::Maj),
            Statistic::Lnfs => Some(CoStatistic::MajL),
            Statistic::Hp => Some(CoStatistic::HpMaj),
            Statistic::DesW(w) => Some(CoStatistic::MajW(*w)),
            Statistic::Ea | Statistic::Da => None,
        }
    }

    fn evaluator(&self, n: usize) -> Result<Evaluator> {
        Ok(match self {
            Statistic::Des => Box::new(|w: &DyckPath| w.des()),
            Statistic::Hp => Box::new(|w: &DyckPath| w.hp()),
            Statistic::Ea => Box::new(|w: &DyckPath| w.ea()),
            Statistic::Lnfs => Box::new(|w: &DyckPath| w.lnfs()),
            Statistic::Da => Box::new(|w: &DyckPath| w.da()),
            Statistic::DesW(r) => {
                check_reference(n, r)?;
                let order = ReferenceOrder::new(r);
                Box::new(move |w: &DyckPath| order.descent_set(w).map(|s| s.len()).unwrap_or(0))
            }
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "des" => Ok(Statistic::Des),
            "hp" => Ok(Statistic::Hp),
            "ea" => Ok(Statistic::Ea),
            "lnfs" => Ok(Statistic::Lnfs),
            "da" => Ok(Statistic::Da),
            other => Err(Error::UnknownStatistic(other.to_string())),
        }
    }
}

impl CoStatistic {
    fn evaluator(&self, n: usize) -> Result<Evaluator> {
        Ok(match self {
            CoStatistic::Maj => Box::new(|w: &DyckPath| w.maj()),
            CoStatistic::MajL => Box::new(|w: &DyckPath| w.maj_l()),
            CoStatistic::HpMaj => Box::new(|w: &DyckPath| w.high_peak_set().sum()),
            CoStatistic::MajW(r) => {
                check_reference(n, r)?;
                let order = ReferenceOrder::new(r);
                Box::new(move |w: &DyckPath| order.descent_set(w).map(|s| s.sum()).unwrap_or(0))
            }
        })
    }
}

fn check_reference(n: usize, r: &DyckPath) -> Result<()> {
    if r.semilength() != n {
        return Err(Error::LengthMismatch {
            left: 2 * n,
            right: r.len(),
        });
    }
    Ok(())
}

/// Value -> number of paths in `D_n`, by full enumeration.
pub fn distribution(n: usize, stat: &Statistic) -> Result<BTreeMap<usize, u64>> {
    distribution_over(&enumerate(n), n, stat)
}

/// Same as [`distribution`] over a precomputed listing of `D_n`.
pub fn distribution_over(paths: &[DyckPath], n: usize, stat: &Statistic) -> Result<BTreeMap<usize, u64>> {
    let f = stat.evaluator(n)?;
    let mut out = BTreeMap::new();
    for w in paths {
        *out.entry(f(w)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Statistic value `k` -> `sum q^{costat(w)}` over paths with `stat(w) = k`.
pub fn joint_q(n: usize, stat: &Statistic, costat: &CoStatistic) -> Result<BTreeMap<usize, QPoly>> {
    joint_q_over(&enumerate(n), n, stat, costat)
}

pub fn joint_q_over(
    paths: &[DyckPath],
    n: usize,
    stat: &Statistic,
    costat: &CoStatistic,
) -> Result<BTreeMap<usize, QPoly>> {
    let f = stat.evaluator(n)?;
    let g = costat.evaluator(n)?;
    let mut counts: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for w in paths {
        let row = counts.entry(f(w)).or_default();
        let e = g(w);
        if row.len() <= e {
            row.resize(e + 1, 0);
        }
        row[e] += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(k, row)| (k, QPoly::from_coeffs(row.into_iter().map(BigInt::from))))
        .collect())
}
