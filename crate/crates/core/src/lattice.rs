//! Exact polyhedral primitives on lattice configurations: affine dimension,
//! convex hulls with facet descriptions, lattice-point enumeration, normalized
//! and mixed volumes, Minkowski sums and unimodular maps.
//!
//! All arithmetic is on integers. Hulls in the plane use a monotone chain;
//! in higher dimension the hull is read off the boundary of a placing
//! triangulation, which also yields the normalized volume.

use std::collections::{BTreeSet, HashMap};

use crate::arith::{gcd_slice, primitive};
use crate::error::{Error, Result};
use crate::linalg::{generalized_cross, int_det, int_inverse_unimodular, int_nullspace, int_rank};

pub type Point = Vec<i64>;

/// A finite set of lattice points in Z^d. Points are kept sorted
/// lexicographically, so equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct LatticeConfiguration {
    #[serde(rename = "d")]
    dim: usize,
    points: Vec<Point>,
}

impl LatticeConfiguration {
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidInput("configuration must contain a point".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate point in configuration".into()));
        }
        Ok(Self { dim, points })
    }

    /// Builds a configuration, silently merging duplicate points.
    pub fn from_points_dedup(dim: usize, mut points: Vec<Point>) -> Result<Self> {
        points.sort();
        points.dedup();
        Self::new(dim, points)
    }

    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Dimension of the smallest affine subspace containing the points.
    pub fn dimension(&self) -> usize {
        affine_dimension(&self.points)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == self.dim
    }

    pub fn translate(&self, t: &[i64]) -> Self {
        let pts = self.points.iter().map(|p| p.iter().zip(t).map(|(a, b)| a + b).collect()).collect();
        Self::new(self.dim, pts).expect("translation preserves validity")
    }
}

pub fn affine_dimension(points: &[Point]) -> usize {
    let Some(p0) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<i64>> = points[1..].iter().map(|p| sub(p, p0)).collect();
    int_rank(&diffs)
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A supporting half-space `normal · x >= offset` (or, for equations,
/// `normal · x == offset`). Normals are primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    /// `normal · p - offset`; nonnegative on the polytope.
    pub fn slack(&self, p: &[i64]) -> i64 {
        dot(&self.normal, p) - self.offset
    }
}

/// Convex hull of lattice points, as vertices plus an inequality description.
///
/// For a full-dimensional polytope `inequalities` are the facets with
/// primitive inner normals and `equations` is empty. Lower-dimensional
/// polytopes are flagged (`affine_dim < dim`): their relative facets are
/// lifted to ambient inequalities and the affine hull is given by `equations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    affine_dim: usize,
    vertices: Vec<Point>,
    inequalities: Vec<Facet>,
    equations: Vec<Facet>,
}

impl LatticePolytope {
    pub fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim == self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> Result<&[Facet]> {
        if !self.is_full_dimensional() {
            return Err(Error::DegenerateHull { affine_dim: self.affine_dim, ambient: self.dim });
        }
        Ok(&self.inequalities)
    }

    pub fn inequalities(&self) -> &[Facet] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.equations.iter().all(|e| e.slack(p) == 0) && self.inequalities.iter().all(|f| f.slack(p) >= 0)
    }

    /// True when `p` lies on the relative boundary.
    pub fn on_boundary(&self, p: &[i64]) -> bool {
        self.contains(p) && self.inequalities.iter().any(|f| f.slack(p) == 0)
    }

    pub fn vertex_configuration(&self) -> LatticeConfiguration {
        LatticeConfiguration::new(self.dim, self.vertices.clone()).expect("vertices are distinct")
    }
}

/// Convex hull of a configuration.
pub fn convex_hull(a: &LatticeConfiguration) -> LatticePolytope {
    polytope_from_points(a.dim, a.points())
}

/// Convex hull of an arbitrary nonempty point list.
pub fn polytope_from_points(dim: usize, points: &[Point]) -> LatticePolytope {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    assert!(!pts.is_empty(), "hull of an empty point set");
    let p0 = pts[0].clone();
    let diffs: Vec<Vec<i64>> = pts[1..].iter().map(|p| sub(p, &p0)).collect();
    let k = int_rank(&diffs);

    if k == dim {
        let (vertices, inequalities) = full_hull(&pts, dim);
        return LatticePolytope { dim, affine_dim: k, vertices, inequalities, equations: vec![] };
    }

    let equations = int_nullspace(&diffs, dim)
        .into_iter()
        .map(|n| {
            let offset = dot(&n, &p0);
            Facet { normal: n, offset }
        })
        .collect();
    if k == 0 {
        return LatticePolytope { dim, affine_dim: 0, vertices: vec![p0], inequalities: vec![], equations };
    }

    // Coordinates on which projection is injective on the affine hull.
    let mut cols: Vec<usize> = Vec::new();
    for c in 0..dim {
        let mut trial = cols.clone();
        trial.push(c);
        let proj: Vec<Vec<i64>> = diffs.iter().map(|d| trial.iter().map(|&j| d[j]).collect()).collect();
        if int_rank(&proj) > cols.len() {
            cols = trial;
            if cols.len() == k {
                break;
            }
        }
    }
    let projected: Vec<Point> = pts.iter().map(|p| cols.iter().map(|&j| p[j]).collect()).collect();
    let (pverts, pfacets) = full_hull(&projected, k);
    let vertices = pts.iter().zip(&projected).filter(|(_, q)| pverts.contains(q)).map(|(p, _)| p.clone()).collect();
    let inequalities = pfacets
        .into_iter()
        .map(|f| {
            let mut normal = vec![0; dim];
            for (i, &j) in cols.iter().enumerate() {
                normal[j] = f.normal[i];
            }
            Facet { normal, offset: f.offset }
        })
        .collect();
    LatticePolytope { dim, affine_dim: k, vertices, inequalities, equations }
}

/// Vertices and facets of a full-dimensional point set in Z^k.
fn full_hull(pts: &[Point], k: usize) -> (Vec<Point>, Vec<Facet>) {
    match k {
        1 => {
            let lo = pts.iter().map(|p| p[0]).min().unwrap();
            let hi = pts.iter().map(|p| p[0]).max().unwrap();
            (
                vec![vec![lo], vec![hi]],
                vec![Facet { normal: vec![1], offset: lo }, Facet { normal: vec![-1], offset: -hi }],
            )
        }
        2 => {
            let ring = monotone_chain(pts);
            let n = ring.len();
            let facets = (0..n)
                .map(|i| {
                    let (a, b) = (&ring[i], &ring[(i + 1) % n]);
                    let normal = primitive(&[a[1] - b[1], b[0] - a[0]]);
                    let offset = dot(&normal, a);
                    Facet { normal, offset }
                })
                .collect();
            let mut vertices = ring;
            vertices.sort();
            (vertices, facets)
        }
        _ => {
            let tri = PlacingTriangulation::build(pts);
            let facets = tri.facets();
            let vertices = pts
                .iter()
                .filter(|p| {
                    let tight: Vec<Vec<i64>> =
                        facets.iter().filter(|f| f.slack(p) == 0).map(|f| f.normal.clone()).collect();
                    tight.len() >= k && int_rank(&tight) == k
                })
                .cloned()
                .collect();
            (vertices, facets)
        }
    }
}

/// Counter-clockwise hull vertices with collinear boundary points removed.
pub fn monotone_chain(pts: &[Point]) -> Vec<Point> {
    let mut p: Vec<&Point> = pts.iter().collect();
    p.sort();
    p.dedup();
    if p.len() <= 2 {
        return p.into_iter().cloned().collect();
    }
    let cross = |o: &Point, a: &Point, b: &Point| {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128 - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    let mut lower: Vec<&Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).cloned().collect()
}

struct BoundaryFacet {
    verts: Vec<usize>,
    normal: Vec<i64>,
    offset: i64,
}

/// Placing (beneath-beyond) triangulation of a full-dimensional point set.
/// Each new point is coned over the boundary simplices it strictly sees.
struct PlacingTriangulation {
    dim: usize,
    boundary: Vec<BoundaryFacet>,
    volume: u64,
    simplices: usize,
}

impl PlacingTriangulation {
    fn build(pts: &[Point]) -> Self {
        let k = pts[0].len();
        let mut simplex = vec![0usize];
        for i in 1..pts.len() {
            if simplex.len() == k + 1 {
                break;
            }
            let mut rows: Vec<Vec<i64>> = simplex[1..].iter().map(|&j| sub(&pts[j], &pts[simplex[0]])).collect();
            rows.push(sub(&pts[i], &pts[simplex[0]]));
            if int_rank(&rows) == rows.len() {
                simplex.push(i);
            }
        }
        assert_eq!(simplex.len(), k + 1, "placing triangulation needs a full-dimensional set");

        // centroid scaled by k + 1
        let centroid: Vec<i128> = (0..k).map(|c| simplex.iter().map(|&j| pts[j][c] as i128).sum()).collect();
        let scale = (k + 1) as i128;

        let make_facet = |verts: Vec<usize>| -> BoundaryFacet {
            let rows: Vec<Vec<i64>> = verts[1..].iter().map(|&j| sub(&pts[j], &pts[verts[0]])).collect();
            let mut normal = generalized_cross(&rows);
            let mut offset = dot(&normal, &pts[verts[0]]);
            let c: i128 = normal.iter().zip(&centroid).map(|(&n, &x)| n as i128 * x).sum();
            if c > scale * offset as i128 {
                normal.iter_mut().for_each(|x| *x = -*x);
                offset = -offset;
            }
            BoundaryFacet { verts, normal, offset }
        };

        let edges: Vec<Vec<i64>> = simplex[1..].iter().map(|&j| sub(&pts[j], &pts[simplex[0]])).collect();
        let mut volume = int_det(&edges).unsigned_abs() as u64;
        let mut boundary: Vec<BoundaryFacet> = (0..=k)
            .map(|skip| {
                let verts: Vec<usize> =
                    simplex.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                make_facet(verts)
            })
            .collect();
        let mut simplices = 1;

        let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
        for (i, p) in pts.iter().enumerate() {
            if in_simplex.contains(&i) {
                continue;
            }
            let visible: Vec<usize> =
                (0..boundary.len()).filter(|&f| dot(&boundary[f].normal, p) > boundary[f].offset).collect();
            if visible.is_empty() {
                continue;
            }
            let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
            for &f in &visible {
                let bf = &boundary[f];
                volume += (dot(&bf.normal, p) - bf.offset) as u64;
                simplices += 1;
                for skip in 0..bf.verts.len() {
                    let mut ridge: Vec<usize> =
                        bf.verts.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                    ridge.sort_unstable();
                    *ridge_count.entry(ridge).or_default() += 1;
                }
            }
            let visible_set: BTreeSet<usize> = visible.into_iter().collect();
            let mut next: Vec<BoundaryFacet> =
                boundary.into_iter().enumerate().filter(|(j, _)| !visible_set.contains(j)).map(|(_, f)| f).collect();
            let mut horizon: Vec<Vec<usize>> =
                ridge_count.into_iter().filter(|&(_, c)| c == 1).map(|(r, _)| r).collect();
            horizon.sort();
            for ridge in horizon {
                let mut verts = ridge;
                verts.push(i);
                next.push(make_facet(verts));
            }
            boundary = next;
        }
        Self { dim: k, boundary, volume, simplices }
    }

    /// Distinct facet hyperplanes with primitive inner normals.
    fn facets(&self) -> Vec<Facet> {
        let set: BTreeSet<Facet> = self
            .boundary
            .iter()
            .map(|b| {
                let g = gcd_slice(&b.normal);
                Facet { normal: b.normal.iter().map(|x| -x / g).collect(), offset: -b.offset / g }
            })
            .collect();
        debug_assert!(set.iter().all(|f| f.normal.len() == self.dim));
        set.into_iter().collect()
    }
}

/// Enumerates every lattice point of a bounded polytope by a bounding-box scan.
pub fn lattice_points(p: &LatticePolytope) -> LatticeConfiguration {
    let d = p.dim;
    let lo: Vec<i64> = (0..d).map(|c| p.vertices.iter().map(|v| v[c]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|c| p.vertices.iter().map(|v| v[c]).max().unwrap()).collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    'scan: loop {
        if p.contains(&cur) {
            out.push(cur.clone());
        }
        for c in (0..d).rev() {
            if cur[c] < hi[c] {
                cur[c] += 1;
                cur[c + 1..d].copy_from_slice(&lo[c + 1..d]);
                continue 'scan;
            }
        }
        break;
    }
    LatticeConfiguration::new(d, out).expect("scan yields distinct points")
}

/// True when the configuration equals the set of lattice points of its hull.
pub fn is_saturated(a: &LatticeConfiguration) -> bool {
    let hull = convex_hull(a);
    lattice_points(&hull) == *a
}

/// d! times the Euclidean volume of the hull, with a flag for
/// lower-dimensional input (whose volume is 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalizedVolume {
    pub value: u64,
    pub degenerate: bool,
}

pub fn normalized_volume(a: &LatticeConfiguration) -> NormalizedVolume {
    points_normalized_volume(a.dim, a.points())
}

fn points_normalized_volume(dim: usize, points: &[Point]) -> NormalizedVolume {
    if affine_dimension(points) < dim {
        return NormalizedVolume { value: 0, degenerate: true };
    }
    let value = match dim {
        1 => {
            let lo = points.iter().map(|p| p[0]).min().unwrap();
            let hi = points.iter().map(|p| p[0]).max().unwrap();
            (hi - lo) as u64
        }
        _ => {
            let mut pts = points.to_vec();
            pts.sort();
            pts.dedup();
            PlacingTriangulation::build(&pts).volume
        }
    };
    NormalizedVolume { value, degenerate: false }
}

/// Number of simplices in the placing triangulation (diagnostics only).
pub fn placing_simplex_count(a: &LatticeConfiguration) -> Option<usize> {
    if !a.is_full_dimensional() || a.dim < 2 {
        return None;
    }
    Some(PlacingTriangulation::build(a.points()).simplices)
}

pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    Ok(polytope_from_points(p.dim, &pairwise_sums(&p.vertices, &q.vertices)))
}

fn pairwise_sums(a: &[Point], b: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> =
        a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect();
    out.sort();
    out.dedup();
    out
}

/// Mixed volume of the hulls of the given configurations, each repeated
/// according to its multiplicity, by inclusion-exclusion over Minkowski sums.
/// Normalized so that `mixed_volume([(A, d)]) == normalized_volume(A)`.
pub fn mixed_volume(entries: &[(&LatticeConfiguration, usize)]) -> Result<u64> {
    let Some((first, _)) = entries.first() else {
        return Err(Error::InvalidInput("mixed volume of an empty list".into()));
    };
    let d = first.dim;
    if let Some((c, _)) = entries.iter().find(|(c, _)| c.dim != d) {
        return Err(Error::DimensionMismatch { expected: d, found: c.dim });
    }
    let total: usize = entries.iter().map(|(_, m)| m).sum();
    if total != d {
        return Err(Error::DimensionMismatch { expected: d, found: total });
    }
    let verts: Vec<Vec<Point>> = entries.iter().map(|(c, _)| convex_hull(c).vertices).collect();
    let mults: Vec<usize> = entries.iter().map(|(_, m)| *m).collect();

    // Sum over sub-multisets, weighted by the number of index subsets they stand for.
    let mut acc: i128 = 0;
    let mut counts = vec![0usize; mults.len()];
    loop {
        let mut i = 0;
        while i < counts.len() && counts[i] == mults[i] {
            counts[i] = 0;
            i += 1;
        }
        if i == counts.len() {
            break;
        }
        counts[i] += 1;
        let size: usize = counts.iter().sum();
        let mut sum_pts: Vec<Point> = vec![vec![0; d]];
        for (j, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                sum_pts = pairwise_sums(&sum_pts, &verts[j]);
                sum_pts = polytope_from_points(d, &sum_pts).vertices;
            }
        }
        let vol = points_normalized_volume(d, &sum_pts).value as i128;
        let weight: i128 = counts.iter().zip(&mults).map(|(&c, &m)| binomial(m, c)).product();
        let sign = if (d - size).is_multiple_of(2) { 1 } else { -1 };
        acc += sign * weight * vol;
    }
    let fact: i128 = (1..=d as i128).product();
    debug_assert_eq!(acc % fact, 0, "inclusion-exclusion sum must be divisible by d!");
    let mv = acc / fact;
    debug_assert!(mv >= 0);
    Ok(mv as u64)
}

fn binomial(n: usize, k: usize) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Lattice points strictly inside and on the boundary of a planar hull.
pub fn pick_counts(a: &LatticeConfiguration) -> Result<(u64, u64)> {
    if a.dim != 2 || a.dimension() != 2 {
        return Err(Error::DegenerateConfiguration { dim: a.dimension(), ambient: a.dim });
    }
    let hull = convex_hull(a);
    let pts = lattice_points(&hull);
    let boundary = pts.points().iter().filter(|p| hull.on_boundary(p)).count() as u64;
    Ok((pts.len() as u64 - boundary, boundary))
}

/// One primitive inner normal per facet.
pub fn facet_normals(p: &LatticePolytope) -> Result<Vec<Vec<i64>>> {
    Ok(p.facets()?.iter().map(|f| f.normal.clone()).collect())
}

/// An affine lattice automorphism `x -> M x + t` with `det M = ±1`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct UnimodularMap {
    matrix: Vec<Vec<i64>>,
    translation: Vec<i64>,
}

impl UnimodularMap {
    pub fn new(matrix: Vec<Vec<i64>>, translation: Vec<i64>) -> Result<Self> {
        let d = matrix.len();
        if translation.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: translation.len() });
        }
        if let Some(r) = matrix.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: r.len() });
        }
        if int_det(&matrix).abs() != 1 {
            return Err(Error::InvalidInput("matrix is not unimodular".into()));
        }
        Ok(Self { matrix, translation })
    }

    pub fn identity(d: usize) -> Self {
        let matrix = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        Self { matrix, translation: vec![0; d] }
    }

    pub fn translation_by(t: Vec<i64>) -> Self {
        let mut m = Self::identity(t.len());
        m.translation = t;
        m
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn apply_point(&self, p: &[i64]) -> Point {
        self.matrix.iter().zip(&self.translation).map(|(row, t)| dot(row, p) + t).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let d = self.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| (0..d).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum()).collect())
            .collect();
        let translation = self.apply_point(&other.translation);
        Self { matrix, translation }
    }

    pub fn inverse(&self) -> Self {
        let inv = int_inverse_unimodular(&self.matrix).expect("unimodular by construction");
        let t: Vec<i64> = inv.iter().map(|row| -dot(row, &self.translation)).collect();
        Self { matrix: inv, translation: t }
    }
}

pub fn apply_unimodular(a: &LatticeConfiguration, t: &UnimodularMap) -> Result<LatticeConfiguration> {
    if a.dim != t.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim, found: t.dim() });
    }
    LatticeConfiguration::new(a.dim, a.points.iter().map(|p| t.apply_point(p)).collect())
}
