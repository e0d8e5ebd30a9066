//! Tukey depth, centerpoints, Tverberg partitions and the lifting reduction
//! from Tverberg partitions with a prime number of parts to central points.
//!
//! Halfspaces are closed: `{y : normal·y + constant >= 0}`. The depth of `x`
//! in `X` is `n` minus the size of the largest subset of `X` that can be
//! strictly separated from `x`.

use itertools::Itertools;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_lp::{self, CommonPoint, Intersection, LpError, VPolytope};
use crate::rational::{self, dot, Point, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CenterpointError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("point of dimension {found} in a configuration of dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subset size {q} exceeds the {n} points")]
    SubsetTooLarge { q: usize, n: usize },
    #[error("the number of parts must be at least {min}, got {r}")]
    InvalidParts { r: usize, min: usize },
    #[error("expected {expected} points, found {found}")]
    WrongSize { expected: usize, found: usize },
    #[error("no Tverberg partition into {r} parts exists for {n} points")]
    NotFound { n: usize, r: usize },
    #[error("depth {depth} of a Tverberg point is below {r}")]
    DepthBelowGuarantee { depth: usize, r: usize },
    #[error("reduction check failed: {0}")]
    ReductionFailed(String),
}

/// A finite labeled point set in `R^d`; label `i` is the `i`-th point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigRepr", into = "ConfigRepr")]
pub struct PointConfig {
    d: usize,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct ConfigRepr {
    d: usize,
    #[serde(with = "rational::serde_frac::vec2")]
    points: Vec<Point>,
}

impl TryFrom<ConfigRepr> for PointConfig {
    type Error = CenterpointError;

    fn try_from(r: ConfigRepr) -> Result<Self, Self::Error> {
        PointConfig::new(r.d, r.points)
    }
}

impl From<PointConfig> for ConfigRepr {
    fn from(c: PointConfig) -> Self {
        ConfigRepr {
            d: c.d,
            points: c.points,
        }
    }
}

impl PointConfig {
    pub fn new(d: usize, points: Vec<Point>) -> Result<Self, CenterpointError> {
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(CenterpointError::DimensionMismatch {
                expected: d,
                found: p.len(),
            });
        }
        Ok(PointConfig { d, points })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &Point {
        &self.points[label]
    }

    fn subset(&self, labels: &[usize]) -> Vec<Point> {
        labels.iter().map(|&i| self.points[i].clone()).collect()
    }

    fn check_point(&self, x: &[Rational]) -> Result<(), CenterpointError> {
        if x.len() != self.d {
            return Err(CenterpointError::DimensionMismatch {
                expected: self.d,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Each point repeated `k` times; lifted label `i*k + t` sits at point `i`.
    pub fn lifted(&self, k: usize) -> PointConfig {
        PointConfig {
            d: self.d,
            points: self
                .points
                .iter()
                .flat_map(|p| std::iter::repeat_n(p.clone(), k))
                .collect(),
        }
    }
}

/// The closed halfspace `{y : normal·y + constant >= 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    #[serde(with = "rational::serde_frac::vec")]
    pub normal: Vec<Rational>,
    #[serde(with = "rational::serde_frac")]
    pub constant: Rational,
}

impl Halfspace {
    pub fn contains(&self, y: &[Rational]) -> bool {
        !(dot(&self.normal, y) + &self.constant).is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthCertificate {
    #[serde(with = "rational::serde_frac::vec")]
    pub point: Point,
    pub depth: usize,
    /// Contains `point` and exactly `depth` points of the configuration.
    pub halfspace: Halfspace,
    /// Labels outside the halfspace: a largest strictly separable subset.
    pub separated: Vec<usize>,
}

impl DepthCertificate {
    /// Checks the witness halfspace. This certifies `depth` as an upper bound;
    /// the lower bound rests on the exhaustive search that produced it.
    pub fn verify(&self, config: &PointConfig) -> bool {
        let inside = config
            .points
            .iter()
            .filter(|p| self.halfspace.contains(p))
            .count();
        let outside: Vec<usize> = (0..config.len())
            .filter(|&i| !self.halfspace.contains(&config.points[i]))
            .collect();
        self.halfspace.contains(&self.point) && inside == self.depth && outside == self.separated
    }
}

/// Exact Tukey depth of `x`: scans subsets from largest to smallest, in
/// lexicographic order within a size, for the first one strictly separable
/// from `x`.
pub fn tukey_depth(
    x: &[Rational],
    config: &PointConfig,
) -> Result<DepthCertificate, CenterpointError> {
    config.check_point(x)?;
    let n = config.len();
    for size in (0..=n).rev() {
        let subsets: Vec<Vec<usize>> = (0..n).combinations(size).collect();
        let found = subsets
            .par_iter()
            .map(|labels| {
                exact_lp::separating_functional(&config.subset(labels), x)
                    .map(|s| s.map(|s| (labels.clone(), s)))
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        if let Some(result) = found {
            let (separated, sep) = result?.expect("filtered to separable subsets");
            let halfspace = Halfspace {
                normal: sep.functional.iter().map(|c| -c).collect(),
                constant: sep.offset,
            };
            return Ok(DepthCertificate {
                point: x.to_vec(),
                depth: n - size,
                halfspace,
                separated,
            });
        }
    }
    unreachable!("the empty subset is always separable")
}

/// Whether `x` lies in the convex hull of every `q`-subset of the
/// configuration.
pub fn hull_membership_depth(
    x: &[Rational],
    config: &PointConfig,
    q: usize,
) -> Result<bool, CenterpointError> {
    config.check_point(x)?;
    let n = config.len();
    if q > n {
        return Err(CenterpointError::SubsetTooLarge { q, n });
    }
    let subsets: Vec<Vec<usize>> = (0..n).combinations(q).collect();
    let failure = subsets
        .par_iter()
        .map(|labels| exact_lp::in_convex_hull(x, &config.subset(labels)))
        .find_map_first(|r| match r {
            Ok(Some(_)) => None,
            Ok(None) => Some(Ok(())),
            Err(e) => Some(Err(e)),
        });
    match failure {
        None => Ok(true),
        Some(Ok(())) => Ok(false),
        Some(Err(e)) => Err(e.into()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TverbergCertificate {
    /// Blocks of labels, each sorted, ordered by smallest label.
    pub blocks: Vec<Vec<usize>>,
    #[serde(with = "rational::serde_frac::vec")]
    pub point: Point,
    /// Convex weights per block, aligned with `blocks`.
    #[serde(with = "rational::serde_frac::vec2")]
    pub weights: Vec<Vec<Rational>>,
}

impl TverbergCertificate {
    pub fn verify(&self, config: &PointConfig, r: usize) -> bool {
        if self.blocks.len() != r || self.weights.len() != r {
            return false;
        }
        let mut seen = vec![false; config.len()];
        for b in &self.blocks {
            for &l in b {
                if l >= seen.len() || std::mem::replace(&mut seen[l], true) {
                    return false;
                }
            }
        }
        if !seen.iter().all(|s| *s) {
            return false;
        }
        self.blocks.iter().zip(&self.weights).all(|(b, w)| {
            b.len() == w.len()
                && !b.is_empty()
                && rational::is_convex_weights(w)
                && rational::combine(w, &config.subset(b), config.d) == self.point
        })
    }
}

fn blocks_common_point(
    config: &PointConfig,
    blocks: &[Vec<usize>],
    bounds: Option<&[(Rational, Rational)]>,
) -> Result<Option<CommonPoint>, LpError> {
    let polys: Vec<VPolytope> = blocks
        .iter()
        .map(|b| VPolytope::new(config.subset(b)))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&VPolytope> = polys.iter().collect();
    match exact_lp::solve_common_point(&refs, bounds)? {
        Intersection::Common(c) => Ok(Some(c)),
        Intersection::Empty { .. } => Ok(None),
    }
}

fn certificate(blocks: Vec<Vec<usize>>, common: CommonPoint) -> TverbergCertificate {
    TverbergCertificate {
        blocks,
        point: common.point,
        weights: common.weights,
    }
}

/// Restricted growth strings of length `n` using exactly `r` block indices,
/// in lexicographic order.
struct PartitionIter {
    n: usize,
    r: usize,
    current: Option<Vec<usize>>,
}

impl PartitionIter {
    fn new(n: usize, r: usize) -> Self {
        let current = if r == 0 || r > n {
            None
        } else {
            // lexicographically smallest: 0..0 then 1, 2, ..., r-1 at the tail
            let mut a = vec![0; n];
            for (j, slot) in a[n - (r - 1)..].iter_mut().enumerate() {
                *slot = j + 1;
            }
            Some(a)
        };
        PartitionIter { n, r, current }
    }

    fn advance(&self, a: &[usize]) -> Option<Vec<usize>> {
        let n = self.n;
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
        }
        for i in (1..n).rev() {
            let cap = (prefix_max[i] + 1).min(self.r - 1);
            for v in a[i] + 1..=cap {
                // smallest tail that still reaches r blocks: zeros, then the missing indices
                let mx = prefix_max[i].max(v);
                let rest = n - i - 1;
                let missing = self.r - 1 - mx;
                if missing > rest {
                    continue;
                }
                let mut b = a[..i].to_vec();
                b.push(v);
                b.extend(std::iter::repeat_n(0, rest - missing));
                b.extend(mx + 1..self.r);
                return Some(b);
            }
        }
        None
    }
}

impl Iterator for PartitionIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        self.current = self.advance(&cur);
        Some(cur)
    }
}

fn blocks_of(rgs: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![Vec::new(); r];
    for (label, &b) in rgs.iter().enumerate() {
        blocks[b].push(label);
    }
    blocks
}

/// First partition in canonical order (restricted growth strings, compared
/// lexicographically) whose block hulls share a point.
pub fn tverberg_partition(
    config: &PointConfig,
    r: usize,
) -> Result<Option<TverbergCertificate>, CenterpointError> {
    if r == 0 {
        return Err(CenterpointError::InvalidParts { r, min: 1 });
    }
    const CHUNK: usize = 512;
    let mut it = PartitionIter::new(config.len(), r);
    loop {
        let chunk: Vec<Vec<usize>> = it.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok(None);
        }
        let found = chunk
            .par_iter()
            .map(|rgs| {
                let blocks = blocks_of(rgs, r);
                blocks_common_point(config, &blocks, None)
                    .map(|c| c.map(|c| certificate(blocks, c)))
            })
            .find_map_first(|res| match res {
                Ok(None) => None,
                other => Some(other),
            });
        if let Some(res) = found {
            return Ok(res?);
        }
    }
}

/// Depth-first search for any Tverberg partition.
///
/// By Carathéodory a Tverberg point lies in the hull of at most `d+1` points
/// of each block, so the search picks disjoint blocks of size at most `d+1`
/// and leaves the remaining points over, appending them to the first block at
/// the end. Labels are visited in lexicographic order of their coordinates.
/// A partial choice is kept only while the chosen blocks share a point
/// inside the box where the `q` blocks still to come can meet: along each
/// axis, between the `q`-th smallest and `q`-th largest remaining coordinate.
pub fn find_tverberg_partition(
    config: &PointConfig,
    r: usize,
) -> Result<Option<TverbergCertificate>, CenterpointError> {
    if r == 0 {
        return Err(CenterpointError::InvalidParts { r, min: 1 });
    }
    let n = config.len();
    if r > n {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| config.points[a].cmp(&config.points[b]).then(a.cmp(&b)));
    let mut search = Search {
        config,
        r,
        order,
        used: vec![false; n],
        blocks: Vec::new(),
    };
    let Some(mut blocks) = search.dfs(0)? else {
        return Ok(None);
    };
    let rest: Vec<usize> = (0..n)
        .filter(|l| !blocks.iter().any(|b| b.contains(l)))
        .collect();
    blocks[0].extend(rest);
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    blocks.sort();
    let common = blocks_common_point(config, &blocks, None)?.ok_or_else(|| {
        CenterpointError::ReductionFailed("completed partition lost its common point".into())
    })?;
    Ok(Some(certificate(blocks, common)))
}

struct Search<'a> {
    config: &'a PointConfig,
    r: usize,
    order: Vec<usize>,
    used: Vec<bool>,
    blocks: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn dfs(&mut self, pos: usize) -> Result<Option<Vec<Vec<usize>>>, CenterpointError> {
        if self.blocks.len() == self.r {
            return Ok(Some(self.blocks.clone()));
        }
        let Some(p) = (pos..self.order.len()).find(|&i| !self.used[self.order[i]]) else {
            return Ok(None);
        };
        let pool: Vec<usize> = (p..self.order.len())
            .filter(|&i| !self.used[self.order[i]])
            .collect();
        let needed = self.r - self.blocks.len();
        if pool.len() < needed {
            return Ok(None);
        }
        let anchor = self.order[p];
        let d = self.config.d;
        for extra in 0..=d.min(pool.len() - 1) {
            for companions in pool[1..].iter().copied().combinations(extra) {
                let mut block = vec![anchor];
                block.extend(companions.iter().map(|&i| self.order[i]));
                let remaining: Vec<usize> = pool
                    .iter()
                    .map(|&i| self.order[i])
                    .filter(|l| !block.contains(l))
                    .collect();
                let Some(bounds) = self.meeting_box(&remaining, needed - 1) else {
                    continue;
                };
                self.blocks.push(block.clone());
                let ok =
                    blocks_common_point(self.config, &self.blocks, bounds.as_deref())?.is_some();
                if ok {
                    for &l in &block {
                        self.used[l] = true;
                    }
                    let found = self.dfs(p + 1)?;
                    for &l in &block {
                        self.used[l] = false;
                    }
                    if found.is_some() {
                        self.blocks.pop();
                        return Ok(found);
                    }
                }
                self.blocks.pop();
            }
        }
        // the anchor stays out of every block
        self.used[anchor] = true;
        let found = self.dfs(p + 1)?;
        self.used[anchor] = false;
        Ok(found)
    }

    /// `None` when the box is empty, `Some(None)` when no bound applies.
    #[allow(clippy::type_complexity)]
    fn meeting_box(&self, labels: &[usize], q: usize) -> Option<Option<Vec<(Rational, Rational)>>> {
        if q == 0 {
            return Some(None);
        }
        if labels.len() < q {
            return None;
        }
        let mut bounds = Vec::with_capacity(self.config.d);
        for k in 0..self.config.d {
            let mut coords: Vec<&Rational> =
                labels.iter().map(|&l| &self.config.points[l][k]).collect();
            coords.sort();
            let lo = coords[q - 1].clone();
            let hi = coords[coords.len() - q].clone();
            if lo > hi {
                return None;
            }
            bounds.push((lo, hi));
        }
        Some(Some(bounds))
    }
}

/// A point of depth at least `r`: the common point of a Tverberg partition
/// into `r` parts, with its exact depth.
pub fn centerpoint(config: &PointConfig, r: usize) -> Result<DepthCertificate, CenterpointError> {
    let cert = find_tverberg_partition(config, r)?
        .ok_or(CenterpointError::NotFound { n: config.len(), r })?;
    let depth = tukey_depth(&cert.point, config)?;
    if depth.depth < r {
        return Err(CenterpointError::DepthBelowGuarantee {
            depth: depth.depth,
            r,
        });
    }
    Ok(depth)
}

/// Parameters of the lifting: each of the `m+1` points is repeated `k` times
/// so that `big_r = k(r-1)+1` is prime, giving `big_m + 1 = k(m+1)` lifted
/// points for a Tverberg partition into `big_r` parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub r: usize,
    pub k: usize,
    pub big_r: usize,
    pub d: usize,
    pub m: usize,
    pub big_m: usize,
}

impl ReductionPlan {
    /// Primality of `big_r` and the counting identities
    /// `big_m + 1 = k(m+1)` and `k(r-1)d + k + big_r = (big_r-1)d + k + big_r = big_m + 2`.
    pub fn identities_hold(&self) -> bool {
        let ReductionPlan {
            r,
            k,
            big_r,
            d,
            m,
            big_m,
        } = *self;
        let lhs = k * (r - 1) * d + k + big_r;
        is_prime(big_r)
            && big_r == k * (r - 1) + 1
            && m == (d + 1) * (r - 1)
            && big_m == (big_r - 1) * (d + 1) + k - 1
            && big_m + 1 == k * (m + 1)
            && lhs == (big_r - 1) * d + k + big_r
            && lhs == big_m + 2
    }

    /// Size of the faces `F` whose hulls must contain the central point.
    pub fn face_size(&self) -> usize {
        self.d * (self.r - 1) + 1
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p))
}

/// Smallest `k >= 1` with `k(r-1)+1` prime.
pub fn reduction_plan(r: usize, d: usize) -> Result<ReductionPlan, CenterpointError> {
    if r < 2 {
        return Err(CenterpointError::InvalidParts { r, min: 2 });
    }
    let k = (1..)
        .find(|k| is_prime(k * (r - 1) + 1))
        .expect("primes in arithmetic progressions");
    let big_r = k * (r - 1) + 1;
    let plan = ReductionPlan {
        r,
        k,
        big_r,
        d,
        m: (d + 1) * (r - 1),
        big_m: (big_r - 1) * (d + 1) + k - 1,
    };
    if !plan.identities_hold() {
        return Err(CenterpointError::ReductionFailed(format!(
            "identities fail for {plan:?}"
        )));
    }
    Ok(plan)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub plan: ReductionPlan,
    pub lifted: TverbergCertificate,
    /// Number of `d(r-1)+1`-subsets checked to contain a lifted block in
    /// their preimage and the point in their hull.
    pub faces_checked: usize,
    pub depth: DepthCertificate,
}

/// Central point of `m+1 = (d+1)(r-1)+1` points through a Tverberg partition
/// of the `k`-fold lifted configuration into a prime number of parts.
pub fn reduce_central_from_tverberg(
    config: &PointConfig,
    r: usize,
) -> Result<ReductionOutcome, CenterpointError> {
    let plan = reduction_plan(r, config.d)?;
    if config.len() != plan.m + 1 {
        return Err(CenterpointError::WrongSize {
            expected: plan.m + 1,
            found: config.len(),
        });
    }
    let lifted = config.lifted(plan.k);
    debug_assert_eq!(lifted.len(), plan.big_m + 1);
    let cert = find_tverberg_partition(&lifted, plan.big_r)?.ok_or_else(|| {
        CenterpointError::ReductionFailed(format!(
            "no Tverberg partition of {} lifted points into {} parts",
            lifted.len(),
            plan.big_r
        ))
    })?;
    if !cert.verify(&lifted, plan.big_r) {
        return Err(CenterpointError::ReductionFailed(
            "invalid lifted certificate".into(),
        ));
    }
    let q = plan.face_size();
    let mut faces_checked = 0;
    for face in (0..config.len()).combinations(q) {
        let contains_block = cert
            .blocks
            .iter()
            .any(|b| b.iter().all(|l| face.contains(&(l / plan.k))));
        if !contains_block {
            return Err(CenterpointError::ReductionFailed(format!(
                "preimage of {face:?} contains no block"
            )));
        }
        faces_checked += 1;
    }
    if !hull_membership_depth(&cert.point, config, q)? {
        return Err(CenterpointError::ReductionFailed(
            "point misses the hull of some face".into(),
        ));
    }
    let depth = tukey_depth(&cert.point, config)?;
    if depth.depth < r {
        return Err(CenterpointError::DepthBelowGuarantee {
            depth: depth.depth,
            r,
        });
    }
    Ok(ReductionOutcome {
        plan,
        lifted: cert,
        faces_checked,
        depth,
    })
}
