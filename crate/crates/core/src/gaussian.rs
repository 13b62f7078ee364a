//! Rate regions for the two-sender Gaussian interference channel: the
//! capacity region under strong interference (intersection of the two MAC
//! pentagons) and the region achievable by rate-splitting with successive
//! simple decoding, plus their comparison.
//!
//! Receiver j observes sum_i g_ij * x_i + noise_j. Rate splitting is
//! realized by superposition: each sender transmits the sum of two
//! independent Gaussian components, undecoded components are treated as
//! noise, and already-decoded components are subtracted.

use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A two-sender, two-receiver Gaussian interference channel.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GaussianIC {
    pub p1: f64,
    pub p2: f64,
    pub n1: f64,
    pub n2: f64,
    pub g11: f64,
    pub g12: f64,
    pub g21: f64,
    pub g22: f64,
}

impl GaussianIC {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        p1: f64,
        p2: f64,
        n1: f64,
        n2: f64,
        g11: f64,
        g12: f64,
        g21: f64,
        g22: f64,
    ) -> Result<Self> {
        if p1 <= 0.0 || p2 <= 0.0 || n1 <= 0.0 || n2 <= 0.0 {
            return Err(Error::InvalidParameter(
                "powers and noise must be strictly positive".into(),
            ));
        }
        Ok(Self {
            p1,
            p2,
            n1,
            n2,
            g11,
            g12,
            g21,
            g22,
        })
    }

    /// The channel of the comparison figure: P1 = P2 = 2, N1 = 0.35,
    /// N2 = 0.3, direct gains sqrt(0.3), cross gains sqrt(0.6).
    pub fn figure1() -> Self {
        Self {
            p1: 2.0,
            p2: 2.0,
            n1: 0.35,
            n2: 0.3,
            g11: 0.3f64.sqrt(),
            g12: 0.6f64.sqrt(),
            g21: 0.6f64.sqrt(),
            g22: 0.3f64.sqrt(),
        }
    }
}

/// Fractions of each sender's power on its first (a) component.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PowerSplit {
    pub beta: f64,
    pub gamma: f64,
}

impl PowerSplit {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) || !(0.0..=1.0).contains(&gamma) {
            return Err(Error::InvalidParameter(format!(
                "power split ({beta}, {gamma}) outside [0,1]^2"
            )));
        }
        Ok(Self { beta, gamma })
    }
}

/// Per-part rates of the four-message scheme.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RateQuadruple {
    pub r1a: f64,
    pub r1b: f64,
    pub r2a: f64,
    pub r2b: f64,
}

impl RateQuadruple {
    pub fn r1(&self) -> f64 {
        self.r1a + self.r1b
    }

    pub fn r2(&self) -> f64 {
        self.r2a + self.r2b
    }
}

/// An achievable set of nonnegative rate pairs, stored as the vertices of
/// its convex polygon in counter-clockwise order starting at the origin.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RateRegion {
    pub boundary: Vec<(f64, f64)>,
    pub label: String,
    pub grid: Option<usize>,
}

/// Point-to-point Gaussian capacity C(s) = 1/2 log2(1 + s) in bits.
pub fn gaussian_capacity(snr: f64) -> Result<f64> {
    if snr < 0.0 || snr.is_nan() {
        return Err(Error::NegativeSnr(snr));
    }
    Ok(0.5 * (1.0 + snr).log2())
}

fn cap(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}

/// True iff each receiver hears the interfering sender at least as well as
/// that sender's intended receiver does, after noise normalization.
pub fn strong_interference_check(ic: &GaussianIC) -> bool {
    let g11s = ic.g11 * ic.g11;
    let g12s = ic.g12 * ic.g12;
    let g21s = ic.g21 * ic.g21;
    let g22s = ic.g22 * ic.g22;
    g12s / ic.n2 >= g11s / ic.n1 && g21s / ic.n1 >= g22s / ic.n2
}

/// The three MAC constraints (R1 cap, R2 cap, sum cap) at receiver j.
fn mac_caps(ic: &GaussianIC, receiver: usize) -> (f64, f64, f64) {
    let (n, gs1, gs2) = match receiver {
        1 => (ic.n1, ic.g11 * ic.g11, ic.g21 * ic.g21),
        _ => (ic.n2, ic.g12 * ic.g12, ic.g22 * ic.g22),
    };
    let s1 = gs1 * ic.p1;
    let s2 = gs2 * ic.p2;
    (cap(s1 / n), cap(s2 / n), cap((s1 + s2) / n))
}

/// Capacity region under strong interference: the intersection of the two
/// MAC pentagons, as a vertex polygon.
pub fn hk_strong_region(ic: &GaussianIC) -> Result<RateRegion> {
    if !strong_interference_check(ic) {
        return Err(Error::WeakInterference);
    }
    let (a1, b1, s1) = mac_caps(ic, 1);
    let (a2, b2, s2) = mac_caps(ic, 2);
    let (a, b, s) = (a1.min(a2), b1.min(b2), s1.min(s2));
    let mut pts = vec![(0.0, 0.0), (a, 0.0), (0.0, b)];
    if a + b <= s {
        pts.push((a, b));
    } else {
        pts.push((a, s - a));
        pts.push((s - b, b));
    }
    Ok(RateRegion {
        boundary: convex_hull(&pts),
        label: "hk-strong".into(),
        grid: None,
    })
}

/// Caps of the four split messages under the fixed decode orderings:
/// m2a -> m1a -> m1b -> m2b at Receiver 1, m1a -> m2a -> m2b -> m1b at
/// Receiver 2. Each entry is (cap at Rx1 path, cap at Rx2 path).
pub fn sdrs_caps(ic: &GaussianIC, split: &PowerSplit) -> [(f64, f64); 4] {
    let (beta, gamma) = (split.beta, split.gamma);
    let g11s = ic.g11 * ic.g11;
    let g12s = ic.g12 * ic.g12;
    let g21s = ic.g21 * ic.g21;
    let g22s = ic.g22 * ic.g22;
    // component powers as seen at each receiver
    let (a1, b1) = (g11s * beta * ic.p1, g11s * (1.0 - beta) * ic.p1);
    let (c1, d1) = (g21s * gamma * ic.p2, g21s * (1.0 - gamma) * ic.p2);
    let (a2, b2) = (g12s * beta * ic.p1, g12s * (1.0 - beta) * ic.p1);
    let (c2, d2) = (g22s * gamma * ic.p2, g22s * (1.0 - gamma) * ic.p2);
    let r1a = (
        cap(a1 / (ic.n1 + b1 + d1)),      // I(X1a;Y1|X2a)
        cap(a2 / (ic.n2 + b2 + c2 + d2)), // I(X1a;Y2)
    );
    let r1b = (
        cap(b1 / (ic.n1 + d1)), // I(X1b;Y1|X2a,X1a)
        cap(b2 / ic.n2),        // I(X1b;Y2|X1a,X2)
    );
    let r2a = (
        cap(c1 / (ic.n1 + a1 + b1 + d1)), // I(X2a;Y1)
        cap(c2 / (ic.n2 + b2 + d2)),      // I(X2a;Y2|X1a)
    );
    let r2b = (
        cap(d1 / ic.n1),        // I(X2b;Y1|X2a,X1)
        cap(d2 / (ic.n2 + b2)), // I(X2b;Y2|X1a,X2a)
    );
    [r1a, r1b, r2a, r2b]
}

/// The componentwise-maximal feasible quadruple for one power split.
pub fn sdrs_constraints(ic: &GaussianIC, split: &PowerSplit) -> RateQuadruple {
    let caps = sdrs_caps(ic, split);
    RateQuadruple {
        r1a: caps[0].0.min(caps[0].1),
        r1b: caps[1].0.min(caps[1].1),
        r2a: caps[2].0.min(caps[2].1),
        r2b: caps[3].0.min(caps[3].1),
    }
}

/// The mirror labeling: each sender's split adapted to its own receiver.
/// Equivalent to relabeling the receivers in the cap formulas.
fn receiver_swapped(ic: &GaussianIC) -> GaussianIC {
    GaussianIC {
        p1: ic.p1,
        p2: ic.p2,
        n1: ic.n2,
        n2: ic.n1,
        g11: ic.g12,
        g12: ic.g11,
        g21: ic.g22,
        g22: ic.g21,
    }
}

/// All (R1, R2) corners over a grid x grid lattice of power splits.
pub fn sdrs_corners(ic: &GaussianIC, grid: usize, include_mirror: bool) -> Vec<(f64, f64)> {
    let step = 1.0 / (grid - 1) as f64;
    let mirror = receiver_swapped(ic);
    (0..grid)
        .into_par_iter()
        .flat_map_iter(move |i| {
            let beta = i as f64 * step;
            let ic = *ic;
            (0..grid).flat_map(move |k| {
                let split = PowerSplit {
                    beta,
                    gamma: k as f64 * step,
                };
                let q = sdrs_constraints(&ic, &split);
                let mut out = vec![(q.r1(), q.r2())];
                if include_mirror {
                    let m = sdrs_constraints(&mirror, &split);
                    out.push((m.r1(), m.r2()));
                }
                out
            })
        })
        .collect()
}

/// Achievable region of the rate-splitting + successive-decoding strategy:
/// convex hull of the grid corners, their axis projections, and the origin.
pub fn sdrs_region(ic: &GaussianIC, grid: usize, include_mirror: bool) -> Result<RateRegion> {
    if grid < 2 {
        return Err(Error::InvalidParameter(format!("grid {grid} < 2")));
    }
    let corners = sdrs_corners(ic, grid, include_mirror);
    let mut pts = Vec::with_capacity(3 * corners.len() + 1);
    pts.push((0.0, 0.0));
    for &(x, y) in &corners {
        pts.push((x, y));
        pts.push((x, 0.0));
        pts.push((0.0, y));
    }
    Ok(RateRegion {
        boundary: convex_hull(&pts),
        label: if include_mirror {
            "sdrs+mirror".into()
        } else {
            "sdrs".into()
        },
        grid: Some(grid),
    })
}

/// Result of comparing an inner region against an outer one.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionComparison {
    pub contained: bool,
    /// largest Euclidean distance from an outer boundary sample to the
    /// inner region
    pub max_gap: f64,
    pub witness: (f64, f64),
}

/// Number of perimeter samples used for the gap computation.
pub const GAP_BOUNDARY_SAMPLES: usize = 512;

pub fn region_compare(inner: &RateRegion, outer: &RateRegion) -> RegionComparison {
    let contained = inner
        .boundary
        .iter()
        .all(|&p| point_in_convex(p, &outer.boundary, 1e-9));
    let mut max_gap = 0.0;
    let mut witness = (0.0, 0.0);
    for p in perimeter_samples(&outer.boundary, GAP_BOUNDARY_SAMPLES) {
        let d = distance_to_region(p, &inner.boundary);
        if d > max_gap {
            max_gap = d;
            witness = p;
        }
    }
    RegionComparison {
        contained,
        max_gap,
        witness,
    }
}

// ---------------------------------------------------------------- geometry

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Monotone chain; returns CCW vertices starting at the lexicographic
/// minimum (the origin for our regions).
pub fn convex_hull(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Whether p lies inside (or on) the CCW convex polygon within tol.
pub fn point_in_convex(p: (f64, f64), poly: &[(f64, f64)], tol: f64) -> bool {
    if poly.is_empty() {
        return false;
    }
    if poly.len() == 1 {
        return (p.0 - poly[0].0).hypot(p.1 - poly[0].1) <= tol;
    }
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if cross(a, b, p) < -tol {
            return false;
        }
    }
    true
}

fn dist_point_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return (p.0 - a.0).hypot(p.1 - a.1);
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    (p.0 - (a.0 + t * dx)).hypot(p.1 - (a.1 + t * dy))
}

/// Euclidean distance from p to the region (0 if inside).
pub fn distance_to_region(p: (f64, f64), poly: &[(f64, f64)]) -> f64 {
    if point_in_convex(p, poly, 1e-12) {
        return 0.0;
    }
    (0..poly.len())
        .map(|i| dist_point_segment(p, poly[i], poly[(i + 1) % poly.len()]))
        .fold(f64::INFINITY, f64::min)
}

/// Evenly spaced samples along the polygon perimeter.
pub fn perimeter_samples(poly: &[(f64, f64)], n: usize) -> Vec<(f64, f64)> {
    if poly.len() < 2 {
        return poly.to_vec();
    }
    let edges: Vec<((f64, f64), (f64, f64))> = (0..poly.len())
        .map(|i| (poly[i], poly[(i + 1) % poly.len()]))
        .collect();
    let lens: Vec<f64> = edges
        .iter()
        .map(|(a, b)| (b.0 - a.0).hypot(b.1 - a.1))
        .collect();
    let total: f64 = lens.iter().sum();
    (0..n)
        .map(|i| {
            let mut d = total * i as f64 / n as f64;
            for ((a, b), &len) in edges.iter().zip(&lens) {
                if d <= len && len > 0.0 {
                    let t = d / len;
                    return (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
                }
                d -= len;
            }
            *poly.last().expect("nonempty")
        })
        .collect()
}

impl RateRegion {
    /// Check the polygon invariants: nonnegative, convex, contains the
    /// origin, downward-closed.
    pub fn validate(&self) -> Result<()> {
        let poly = &self.boundary;
        if poly.iter().any(|&(x, y)| x < 0.0 || y < 0.0) {
            return Err(Error::InvalidParameter("negative vertex".into()));
        }
        if !point_in_convex((0.0, 0.0), poly, 1e-12) {
            return Err(Error::InvalidParameter("origin not inside".into()));
        }
        for i in 0..poly.len() {
            let a = poly[i];
            let b = poly[(i + 1) % poly.len()];
            let c = poly[(i + 2) % poly.len()];
            if cross(a, b, c) < -1e-12 {
                return Err(Error::InvalidParameter("polygon not convex".into()));
            }
        }
        // downward closure: the axis projections of every vertex lie inside
        for &(x, y) in poly {
            if !point_in_convex((x, 0.0), poly, 1e-9) || !point_in_convex((0.0, y), poly, 1e-9) {
                return Err(Error::InvalidParameter("region not downward-closed".into()));
            }
        }
        Ok(())
    }

    pub fn max_r1(&self) -> f64 {
        self.boundary.iter().map(|p| p.0).fold(0.0, f64::max)
    }

    pub fn max_r2(&self) -> f64 {
        self.boundary.iter().map(|p| p.1).fold(0.0, f64::max)
    }

    /// Largest R1 + R2 over the region.
    pub fn max_sum_rate(&self) -> f64 {
        self.boundary.iter().map(|p| p.0 + p.1).fold(0.0, f64::max)
    }
}
