//! Quadrature on SE(2) and on the fundamental domain Ω.
//!
//! Translation axes use Gauss–Legendre; the rotation axis uses the
//! equal-weight trapezoid rule when it covers the full circle and
//! Gauss–Legendre on a proper window, unless the `QuadratureSpec` pins a rule.
//! Haar weights carry the `(4π²)⁻¹` normalisation of `dg`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{wrap_angle, wrap_unit, CosetPoint, GroupElement};
use crate::par;

/// `(4π²)⁻¹`, the density of the normalised Haar measure.
pub const HAAR_DENSITY: f64 = 1.0 / (4.0 * PI * PI);

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, x);
                dp = d;
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped onto `[lo, hi]` as `(node, weight)` pairs.
pub fn gauss_legendre_on(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (hi - lo);
    let mid = 0.5 * (hi + lo);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| (mid + half * xi, half * wi))
        .collect()
}

/// Equal-weight rule on a full period starting at `start`.
pub fn trapezoid_periodic(start: f64, period: f64, n: usize) -> Vec<(f64, f64)> {
    let h = period / n as f64;
    (0..n).map(|i| (start + h * i as f64, h)).collect()
}

/// Composite trapezoid rule on a closed interval, endpoints included.
pub fn trapezoid_closed(lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let h = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let w = if i == 0 || i == n - 1 { 0.5 * h } else { h };
            (lo + h * i as f64, w)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::UnboundedSupport("interval"));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "empty interval [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn widen(&self, r: f64) -> Interval {
        Interval {
            lo: self.lo - r,
            hi: self.hi + r,
        }
    }

    pub fn shift(&self, d: f64) -> Interval {
        Interval {
            lo: self.lo + d,
            hi: self.hi + d,
        }
    }
}

/// Angular extent of a support box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ThetaRange {
    Full,
    /// The arc `[start, start + width]`, read modulo 2π.
    Window { start: f64, width: f64 },
}

impl ThetaRange {
    pub fn window(start: f64, end: f64) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::UnboundedSupport("theta"));
        }
        let width = end - start;
        if width <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "empty theta window [{start}, {end}]"
            )));
        }
        if width >= TAU {
            return Ok(ThetaRange::Full);
        }
        Ok(ThetaRange::Window {
            start: wrap_angle(start),
            width,
        })
    }

    pub fn contains(&self, theta: f64) -> bool {
        match *self {
            ThetaRange::Full => true,
            ThetaRange::Window { start, width } => wrap_angle(theta - start) <= width,
        }
    }

    pub fn width(&self) -> f64 {
        match *self {
            ThetaRange::Full => TAU,
            ThetaRange::Window { width, .. } => width,
        }
    }

    /// Minkowski sum of two arcs.
    pub fn sum(&self, other: &ThetaRange) -> ThetaRange {
        match (*self, *other) {
            (
                ThetaRange::Window { start: s1, width: w1 },
                ThetaRange::Window { start: s2, width: w2 },
            ) if w1 + w2 < TAU => ThetaRange::Window {
                start: wrap_angle(s1 + s2),
                width: w1 + w2,
            },
            _ => ThetaRange::Full,
        }
    }

    /// Image under `θ ↦ −θ`.
    pub fn negated(&self) -> ThetaRange {
        match *self {
            ThetaRange::Full => ThetaRange::Full,
            ThetaRange::Window { start, width } => ThetaRange::Window {
                start: wrap_angle(-start - width),
                width,
            },
        }
    }

    fn nodes(&self, n: usize, rule: ThetaRule) -> Vec<(f64, f64)> {
        match (*self, rule) {
            (ThetaRange::Full, ThetaRule::Auto | ThetaRule::Trapezoid) => {
                trapezoid_periodic(0.0, TAU, n)
            }
            (ThetaRange::Full, ThetaRule::GaussLegendre) => gauss_legendre_on(0.0, TAU, n),
            (ThetaRange::Window { start, width }, ThetaRule::Trapezoid) => {
                trapezoid_closed(start, start + width, n)
            }
            (ThetaRange::Window { start, width }, _) => {
                gauss_legendre_on(start, start + width, n)
            }
        }
    }
}

/// Compact support of a test function, declared up front.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportBox {
    pub x: Interval,
    pub y: Interval,
    pub theta: ThetaRange,
}

impl SupportBox {
    pub fn new(x: (f64, f64), y: (f64, f64), theta: ThetaRange) -> Result<Self> {
        Ok(SupportBox {
            x: Interval::new(x.0, x.1)?,
            y: Interval::new(y.0, y.1)?,
            theta,
        })
    }

    /// The fundamental domain Ω itself.
    pub fn omega() -> Self {
        SupportBox {
            x: Interval { lo: 0.0, hi: 1.0 },
            y: Interval { lo: 0.0, hi: 1.0 },
            theta: ThetaRange::Full,
        }
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.x.contains(g.x1) && self.y.contains(g.x2) && self.theta.contains(g.theta)
    }

    /// Largest translation length `|x|` over the box.
    pub fn max_radius(&self) -> f64 {
        let xm = self.x.lo.abs().max(self.x.hi.abs());
        let ym = self.y.lo.abs().max(self.y.hi.abs());
        xm.hypot(ym)
    }

    pub fn is_bounded(&self) -> bool {
        [self.x.lo, self.x.hi, self.y.lo, self.y.hi]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// How the rotation axis is discretised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThetaRule {
    /// Trapezoid on the full circle, Gauss–Legendre on a window.
    #[default]
    Auto,
    Trapezoid,
    GaussLegendre,
}

/// Node counts per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub n_x: usize,
    pub n_y: usize,
    pub n_theta: usize,
    /// Nodes for circle integrals over a polar angle, such as S¹ inner
    /// products in the irreducible representations.
    pub n_phi: usize,
    pub theta_rule: ThetaRule,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::uniform(64)
    }
}

impl QuadratureSpec {
    pub fn uniform(n: usize) -> Self {
        QuadratureSpec {
            n_x: n,
            n_y: n,
            n_theta: n,
            n_phi: n,
            theta_rule: ThetaRule::Auto,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, n) in [
            ("n_x", self.n_x),
            ("n_y", self.n_y),
            ("n_theta", self.n_theta),
            ("n_phi", self.n_phi),
        ] {
            if n < 2 {
                return Err(Error::InvalidQuadrature(format!(
                    "{name} = {n}, need at least 2 nodes"
                )));
            }
        }
        Ok(())
    }
}

/// A translation point with the rotation nodes attached to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub x1: f64,
    pub x2: f64,
    /// `(theta, weight)`; weights already include the Haar density.
    pub nodes: Vec<(f64, f64)>,
}

/// A cubature rule for `∫_{SE(2)} · dg`, grouped by translation point so
/// that rotation transforms can be taken column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarCubature {
    pub columns: Vec<Column>,
}

impl HaarCubature {
    /// Tensor rule on a support box.
    pub fn on_box(support: &SupportBox, q: &QuadratureSpec) -> Result<Self> {
        q.validate()?;
        if !support.is_bounded() {
            return Err(Error::UnboundedSupport("translation"));
        }
        let xs = gauss_legendre_on(support.x.lo, support.x.hi, q.n_x);
        let ys = gauss_legendre_on(support.y.lo, support.y.hi, q.n_y);
        let ts = support.theta.nodes(q.n_theta, q.theta_rule);
        let mut columns = Vec::with_capacity(xs.len() * ys.len());
        for &(x, wx) in &xs {
            for &(y, wy) in &ys {
                let w = wx * wy * HAAR_DENSITY;
                columns.push(Column {
                    x1: x,
                    x2: y,
                    nodes: ts.iter().map(|&(t, wt)| (t, w * wt)).collect(),
                });
            }
        }
        Ok(HaarCubature { columns })
    }

    /// Pushes the rule forward through `g ↦ g⁻¹`; Haar measure is
    /// inversion invariant, so weights are unchanged.
    pub fn inverted(&self) -> HaarCubature {
        let mut columns = Vec::with_capacity(self.len());
        for c in &self.columns {
            for &(t, w) in &c.nodes {
                let g = GroupElement::new(c.x1, c.x2, t).inverse();
                columns.push(Column {
                    x1: g.x1,
                    x2: g.x2,
                    nodes: vec![(g.theta, w)],
                });
            }
        }
        HaarCubature { columns }
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.columns.iter().map(|c| c.nodes.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&GroupElement) -> Complex64 + Sync + Send,
    {
        par::sum_indexed(self.columns.len(), |i| {
            let c = &self.columns[i];
            c.nodes
                .iter()
                .map(|&(t, w)| f(&GroupElement::new(c.x1, c.x2, t)) * w)
                .sum()
        })
    }

    pub fn total_weight(&self) -> f64 {
        self.columns
            .iter()
            .flat_map(|c| c.nodes.iter().map(|n| n.1))
            .sum()
    }
}

/// `∫_{SE(2)} f dg` over the function's declared support.
pub fn integrate_haar<F>(f: &F, q: &QuadratureSpec) -> Result<Complex64>
where
    F: GroupFunction + ?Sized,
{
    let rule = f.cubature(q)?;
    Ok(rule.integrate(|g| f.eval(g)))
}

/// `∫_{SE(2)} h dg` for an integrand known to vanish outside `support`.
pub fn integrate_haar_on<F>(support: &SupportBox, q: &QuadratureSpec, h: F) -> Result<Complex64>
where
    F: Fn(&GroupElement) -> Complex64 + Sync + Send,
{
    Ok(HaarCubature::on_box(support, q)?.integrate(h))
}

/// Interior kinks of a coset function, in Ω coordinates. Quadrature on Ω
/// splits each axis into panels at these points.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Breakpoints {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub theta: Vec<f64>,
}

impl Breakpoints {
    pub fn is_empty(&self) -> bool {
        self.x.is_empty() && self.y.is_empty() && self.theta.is_empty()
    }
}

fn unit_panels(breaks: &[f64], n: usize) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breaks
        .iter()
        .map(|&b| wrap_unit(b))
        .filter(|&b| b > 1e-14 && b < 1.0 - 1e-14)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut edges = vec![0.0];
    edges.extend(cuts);
    edges.push(1.0);
    edges
        .windows(2)
        .flat_map(|e| gauss_legendre_on(e[0], e[1], n))
        .collect()
}

fn circle_panels(breaks: &[f64], n: usize, rule: ThetaRule) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breaks.iter().map(|&b| wrap_angle(b)).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    match cuts.len() {
        0 => ThetaRange::Full.nodes(n, rule),
        _ => {
            let mut edges = cuts.clone();
            edges.push(cuts[0] + TAU);
            edges
                .windows(2)
                .flat_map(|e| gauss_legendre_on(e[0], e[1], n))
                .map(|(t, w)| (wrap_angle(t), w))
                .collect()
        }
    }
}

/// Tensor grid on Ω with raw weights for `dx dy dθ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaGrid {
    pub x: Vec<(f64, f64)>,
    pub y: Vec<(f64, f64)>,
    pub theta: Vec<(f64, f64)>,
}

impl OmegaGrid {
    pub fn new(breaks: &Breakpoints, q: &QuadratureSpec) -> Result<Self> {
        q.validate()?;
        Ok(OmegaGrid {
            x: unit_panels(&breaks.x, q.n_x),
            y: unit_panels(&breaks.y, q.n_y),
            theta: circle_panels(&breaks.theta, q.n_theta, q.theta_rule),
        })
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len() * self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `∭_Ω h dx dy dθ`.
    pub fn integrate<F>(&self, h: F) -> Complex64
    where
        F: Fn(&CosetPoint) -> Complex64 + Sync + Send,
    {
        par::sum_indexed(self.x.len(), |i| {
            let (x, wx) = self.x[i];
            let mut acc = Complex64::new(0.0, 0.0);
            for &(y, wy) in &self.y {
                for &(t, wt) in &self.theta {
                    let p = CosetPoint { x, y, theta: t };
                    acc += h(&p) * (wx * wy * wt);
                }
            }
            acc
        })
    }

    /// Samples `h` on the grid, laid out `[ix][iy][it]`.
    pub fn sample<F>(&self, h: F) -> Vec<Complex64>
    where
        F: Fn(&CosetPoint) -> Complex64 + Sync + Send,
    {
        let ny = self.y.len();
        let nt = self.theta.len();
        par::map_indexed(self.x.len(), |i| {
            let x = self.x[i].0;
            let mut row = Vec::with_capacity(ny * nt);
            for &(y, _) in &self.y {
                for &(t, _) in &self.theta {
                    row.push(h(&CosetPoint { x, y, theta: t }));
                }
            }
            row
        })
        .concat()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2usize, 5, 16, 64, 129] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n).min(60) {
                let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n={n} deg={deg}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn nodes_are_sorted_and_symmetric() {
        let (x, w) = gauss_legendre(33);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
        for i in 0..33 {
            assert!((x[i] + x[32 - i]).abs() < 1e-15);
            assert!((w[i] - w[32 - i]).abs() < 1e-15);
        }
    }

    #[test]
    fn spec_rejects_tiny_counts() {
        let mut q = QuadratureSpec::uniform(8);
        q.n_phi = 1;
        assert!(matches!(q.validate(), Err(Error::InvalidQuadrature(_))));
    }

    #[test]
    fn theta_window_contains_wrapped_angles() {
        let w = ThetaRange::window(5.5, 7.0).unwrap();
        assert!(w.contains(6.0));
        assert!(w.contains(0.3));
        assert!(!w.contains(1.0));
        assert_eq!(ThetaRange::window(0.0, 7.0).unwrap(), ThetaRange::Full);
    }

    #[test]
    fn haar_total_weight_matches_box_measure() {
        let b = SupportBox::new((0.0, 1.0), (0.0, 1.0), ThetaRange::Full).unwrap();
        let rule = HaarCubature::on_box(&b, &QuadratureSpec::uniform(8)).unwrap();
        assert!((rule.total_weight() - 1.0 / TAU).abs() < 1e-15);
    }

    #[test]
    fn omega_panels_cover_unit_interval() {
        let b = Breakpoints {
            x: vec![0.2, 0.8, 1.2],
            y: vec![],
            theta: vec![0.5, 5.5],
        };
        let g = OmegaGrid::new(&b, &QuadratureSpec::uniform(6)).unwrap();
        assert_eq!(g.x.len(), 18);
        assert_eq!(g.y.len(), 6);
        assert_eq!(g.theta.len(), 12);
        let sx: f64 = g.x.iter().map(|p| p.1).sum();
        let st: f64 = g.theta.iter().map(|p| p.1).sum();
        assert!((sx - 1.0).abs() < 1e-14);
        assert!((st - TAU).abs() < 1e-13);
    }
}
