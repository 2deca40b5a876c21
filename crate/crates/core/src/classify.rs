//! Planar lattice configurations up to affine unimodular equivalence, and the
//! enumeration of saturated planar Chasles configurations.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::chasles::is_chasles_configuration;
use crate::lattice::{
    apply_unimodular, convex_hull, is_saturated, lattice_points, monotone_chain, normalized_volume, pick_counts,
    LatticeConfiguration, Point, UnimodularMap,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InvariantKey {
    pub vol: u64,
    pub interior: u64,
    pub boundary: u64,
    pub vertices: usize,
    /// Lattice lengths of the edges, ascending.
    pub edge_lengths: Vec<u64>,
}

pub fn invariant_key(a: &LatticeConfiguration) -> InvariantKey {
    let verts = monotone_chain(a.points());
    let (interior, boundary) = pick_counts(a).unwrap_or((0, 0));
    let mut edge_lengths: Vec<u64> = if verts.len() < 3 {
        vec![]
    } else {
        (0..verts.len())
            .map(|i| {
                let (p, q) = (&verts[i], &verts[(i + 1) % verts.len()]);
                (q[0] - p[0]).gcd(&(q[1] - p[1])) as u64
            })
            .collect()
    };
    edge_lengths.sort_unstable();
    InvariantKey { vol: normalized_volume(a).value, interior, boundary, vertices: verts.len(), edge_lengths }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceClass {
    pub canonical: LatticeConfiguration,
    pub invariant_key: InvariantKey,
    /// Maps `canonical` onto the first member met during enumeration.
    pub witness: Option<UnimodularMap>,
}

fn primitive_dir(p: &[i64], q: &[i64]) -> [i64; 2] {
    let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
    let g = dx.gcd(&dy);
    [dx / g, dy / g]
}

/// The linear map sending `u` to `e1` and `w` into `{(a, b) : 0 <= a < b}`.
fn cone_normal_form(u: [i64; 2], w: [i64; 2]) -> Vec<Vec<i64>> {
    let ext = u[0].extended_gcd(&u[1]);
    // ext.x * u0 + ext.y * u1 = 1, so rows (x, y), (-u1, u0) send u to e1.
    let (s, t) = (ext.x * ext.gcd, ext.y * ext.gcd);
    let mut m = [[s, t], [-u[1], u[0]]];
    let (a, mut b) = (m[0][0] * w[0] + m[0][1] * w[1], m[1][0] * w[0] + m[1][1] * w[1]);
    if b < 0 {
        m[1] = [-m[1][0], -m[1][1]];
        b = -b;
    }
    let k = a.div_euclid(b);
    vec![vec![m[0][0] - k * m[1][0], m[0][1] - k * m[1][1]], m[1].to_vec()]
}

/// Candidate linear maps: one per vertex and ordered pair of incident edges.
fn frame_maps(verts: &[Point]) -> Vec<Vec<Vec<i64>>> {
    let n = verts.len();
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let v = &verts[i];
        let next = primitive_dir(v, &verts[(i + 1) % n]);
        let prev = primitive_dir(v, &verts[(i + n - 1) % n]);
        out.push(cone_normal_form(next, prev));
        out.push(cone_normal_form(prev, next));
    }
    out
}

fn anchor(a: &LatticeConfiguration) -> Point {
    if let Ok((1, _)) = pick_counts(a) {
        let hull = convex_hull(a);
        if let Some(p) = lattice_points(&hull).points().iter().find(|p| !hull.on_boundary(p)) {
            return p.clone();
        }
    }
    a.points()[0].clone()
}

/// The canonical representative and a map sending `a` onto it. Inputs that
/// are not two-dimensional polygons are returned unchanged.
pub fn canonical_form_with_map(a: &LatticeConfiguration) -> (LatticeConfiguration, UnimodularMap) {
    if a.dim_ambient() != 2 || a.dimension() != 2 {
        return (a.clone(), UnimodularMap::identity(a.dim_ambient()));
    }
    let verts = monotone_chain(a.points());
    let mut best: Option<(Vec<Point>, LatticeConfiguration, UnimodularMap)> = None;
    for m in frame_maps(&verts) {
        let lin = UnimodularMap::new(m, vec![0, 0]).expect("unimodular frame");
        let image = apply_unimodular(a, &lin).expect("same dimension");
        let base = anchor(&image);
        let shift = UnimodularMap::translation_by(base.iter().map(|x| -x).collect());
        let map = shift.compose(&lin);
        let image = image.translate(shift.translation());
        let key = monotone_chain(image.points());
        let mut key_sorted = key;
        key_sorted.sort();
        let better = match &best {
            None => true,
            Some((k, c, _)) => (&key_sorted, image.points()) < (k, c.points()),
        };
        if better {
            best = Some((key_sorted, image, map));
        }
    }
    let (_, c, m) = best.expect("a polygon has a vertex");
    (c, m)
}

pub fn canonical_form(a: &LatticeConfiguration) -> LatticeConfiguration {
    canonical_form_with_map(a).0
}

/// A verified map `T` with `apply_unimodular(a, T) == b`, if one exists.
pub fn equivalence_witness(a: &LatticeConfiguration, b: &LatticeConfiguration) -> Option<UnimodularMap> {
    if a.dim_ambient() != b.dim_ambient() || a.len() != b.len() {
        return None;
    }
    let (ca, ta) = canonical_form_with_map(a);
    let (cb, tb) = canonical_form_with_map(b);
    if ca != cb {
        return None;
    }
    let w = tb.inverse().compose(&ta);
    (apply_unimodular(a, &w).ok().as_ref() == Some(b)).then_some(w)
}

pub fn equivalent(a: &LatticeConfiguration, b: &LatticeConfiguration) -> bool {
    equivalence_witness(a, b).is_some()
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// `(vertex count, interior lattice points)` of the hull via Pick, or `None`
/// for a degenerate hull.
fn hull_stats(pts: &[Point]) -> Option<(usize, i64)> {
    let verts = monotone_chain(pts);
    if verts.len() < 3 {
        return None;
    }
    let n = verts.len();
    let area2: i64 = (1..n - 1).map(|i| cross(&verts[0], &verts[i], &verts[i + 1])).sum();
    let boundary: i64 = (0..n)
        .map(|i| {
            let (p, q) = (&verts[i], &verts[(i + 1) % n]);
            (q[0] - p[0]).gcd(&(q[1] - p[1]))
        })
        .sum();
    Some((n, (area2 - boundary + 2) / 2))
}

fn in_convex_position(pts: &[Point]) -> bool {
    pts.len() < 3 || monotone_chain(pts).len() == pts.len()
}

fn explore(grid: &[Point], start: usize, chosen: &mut Vec<Point>, max_vertices: usize, hits: &mut Vec<Vec<Point>>) {
    if chosen.len() >= 3 {
        match hull_stats(chosen) {
            Some((_, interior)) if interior >= 2 => return,
            Some((_, 1)) => hits.push(chosen.clone()),
            _ => {}
        }
    }
    if chosen.len() == max_vertices {
        return;
    }
    for i in start..grid.len() {
        chosen.push(grid[i].clone());
        if in_convex_position(chosen) {
            explore(grid, i + 1, chosen, max_vertices, hits);
        }
        chosen.pop();
    }
}

/// Saturated planar Chasles configurations up to equivalence, found among
/// polygons with at most `max_vertices` vertices in `[0, search_box]^2`.
pub fn classify_planar_saturated_chasles(search_box: i64, max_vertices: usize) -> Vec<EquivalenceClass> {
    let grid: Vec<Point> = (0..=search_box).flat_map(|x| (0..=search_box).map(move |y| vec![x, y])).collect();
    let found: BTreeMap<LatticeConfiguration, LatticeConfiguration> = (0..grid.len())
        .into_par_iter()
        .map(|first| {
            let mut hits = Vec::new();
            let mut chosen = vec![grid[first].clone()];
            explore(&grid, first + 1, &mut chosen, max_vertices, &mut hits);
            let mut local = BTreeMap::new();
            for verts in hits {
                let cfg = LatticeConfiguration::new(2, verts).expect("planar points");
                let sat = lattice_points(&convex_hull(&cfg));
                local.entry(canonical_form(&sat)).or_insert(sat);
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                match a.get(&k) {
                    Some(existing) if existing <= &v => {}
                    _ => {
                        a.insert(k, v);
                    }
                }
            }
            a
        });
    let mut classes: Vec<EquivalenceClass> = found
        .into_iter()
        .filter(|(c, _)| {
            is_saturated(c)
                && pick_counts(c).map(|(i, _)| i == 1).unwrap_or(false)
                && is_chasles_configuration(c).map(|r| r.is_chasles).unwrap_or(false)
        })
        .map(|(canonical, member)| EquivalenceClass {
            witness: equivalence_witness(&canonical, &member),
            invariant_key: invariant_key(&canonical),
            canonical,
        })
        .collect();
    classes.sort_by(|a, b| (&a.invariant_key, &a.canonical).cmp(&(&b.invariant_key, &b.canonical)));
    classes
}
