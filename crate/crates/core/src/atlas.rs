// Copyright 2026 The cvqmap Authors
// SPDX-License-Identifier: Apache-2.0

//! Extremal resource families and the boundary curves of the mapped states.
//!
//! Gaussian families: GMEMS/GLEMS (maximal/minimal entanglement at fixed
//! global and marginal entropies, `lambda = +1/-1`), GMEMMS (maximal
//! entanglement at fixed marginals, `g = 2|d| + 1`), two-mode squeezed
//! thermal states. Their images under the map give the qubit boundaries
//! QMEMS/QLEMS, the Werner/MEMS line and the marginal "pyramid".

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt_f64;
use crate::gaussian::{from_entropic_params, EntropicParams, StandardFormCM};
use crate::interface::{mapped_global_entropy, mapped_negativity, steady_state};
use crate::linalg::trace_distance;
use crate::par::{map_indexed, Execution};
use crate::qubit::{werner, TwoQubitState};

/// Maximally entangled state at fixed `(s, d, g)`.
pub fn gmems(s: f64, d: f64, g: f64) -> Result<StandardFormCM> {
    from_entropic_params(&EntropicParams::new(s, d, g, 1.0))
}

/// Least entangled state at fixed `(s, d, g)`.
pub fn glems(s: f64, d: f64, g: f64) -> Result<StandardFormCM> {
    from_entropic_params(&EntropicParams::new(s, d, g, -1.0))
}

/// Two-mode squeezed thermal state: `a = b = sqrt(g) cosh 2r`,
/// `c+ = -c- = sqrt(g) sinh 2r`.
pub fn squeezed_thermal(g: f64, r: f64) -> Result<StandardFormCM> {
    if !(g >= 1.0) || !(r >= 0.0) || !g.is_finite() || !r.is_finite() {
        return Err(Error::Domain(format!(
            "squeezed thermal state needs g >= 1 and r >= 0, got g = {g}, r = {r}"
        )));
    }
    let root = g.sqrt();
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    Ok(StandardFormCM::new(root * ch, root * ch, root * sh, -root * sh))
}

/// Maximally entangled state at fixed marginals `a`, `b`:
/// `c+- = +-sqrt((1 + max{a,b}) (min{a,b} - 1))`.
pub fn gmemms(a: f64, b: f64) -> Result<StandardFormCM> {
    if !(a.min(b) >= 1.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("marginals must be >= 1, got a = {a}, b = {b}")));
    }
    let c = ((1.0 + a.max(b)) * (a.min(b) - 1.0)).sqrt();
    Ok(StandardFormCM::new(a, b, c, -c))
}

fn field_g(field_entropy: f64) -> f64 {
    1.0 / (1.0 - field_entropy)
}

/// Largest qubit linear entropy reachable from a field of linear entropy
/// `x = 1 - 1/g`: `1 - 4 / (1 + g^2)^2` (Werner limit).
pub fn qubit_entropy_max(field_entropy: f64) -> f64 {
    let g = field_g(field_entropy);
    1.0 - 4.0 / (1.0 + g * g).powi(2)
}

/// Smallest qubit linear entropy reachable: `(2/3) x (2 - x)`.
pub fn qubit_entropy_min(field_entropy: f64) -> f64 {
    2.0 / 3.0 * field_entropy * (2.0 - field_entropy)
}

/// Largest qubit negativity reachable from a field of negativity `n12`.
pub fn nmax_vs_field_negativity(n12: f64) -> f64 {
    if n12.is_infinite() {
        return 1.0;
    }
    1.0 - 2.0 / ((1.0 + n12).powi(2) + 1.0)
}

/// Upper boundary of the negativity vs. global linear entropy plane for two
/// qubits, attained by Werner states.
pub fn mems_boundary(s_qubit: f64) -> f64 {
    if s_qubit < 8.0 / 9.0 {
        (-1.0 + 3.0 * (1.0 - s_qubit).sqrt()) / 2.0
    } else {
        0.0
    }
}

/// Field marginal `s` of a symmetric resource whose qubit marginals have
/// linear entropy `s_loc`.
pub fn symmetric_s_for_local_entropy(s_loc: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s_loc) {
        return Err(Error::Domain(format!("local entropy {s_loc} outside [0, 1)")));
    }
    Ok(1.0 / (1.0 - s_loc).sqrt())
}

/// Global purity parameter `g` of the symmetric GMEMS whose image has local
/// entropy `s_loc` and global entropy `s_global`.
pub fn qmems_g(s_loc: f64, s_global: f64) -> Result<f64> {
    let s = symmetric_s_for_local_entropy(s_loc)?;
    let rad = 4.0 - 9.0 * s_global + s_loc * (4.0 + s_loc);
    if !(rad >= 0.0) {
        return Err(Error::NoPhysicalState(format!(
            "no symmetric GMEMS with S_loc = {s_loc}, S = {s_global}"
        )));
    }
    let g = 3.0 / (1.0 - s_loc + rad.sqrt());
    let slack = 1e-12 * s;
    if g < 1.0 - slack || g > 2.0 * s - 1.0 + slack {
        return Err(Error::NoPhysicalState(format!(
            "g = {g} outside [1, {}] for S_loc = {s_loc}, S = {s_global}",
            2.0 * s - 1.0
        )));
    }
    Ok(g.clamp(1.0, 2.0 * s - 1.0))
}

/// Global entropy above which the symmetric QMEMS at `s_loc` is separable.
pub fn qmems_separability_threshold(s_loc: f64) -> f64 {
    (4.0 * s_loc * (1.0 - s_loc + s_loc * s_loc).sqrt() - 4.0 * (s_loc - 2.0) * s_loc) / 9.0
}

/// Closed-form negativity of the symmetric QMEMS.
pub fn qmems_negativity(s_loc: f64, s_global: f64) -> Result<f64> {
    qmems_g(s_loc, s_global)?;
    let entangled = 9.0 * s_global + 4.0 * (s_loc - 2.0) * s_loc
        < 4.0 * s_loc * (1.0 - s_loc + s_loc * s_loc).sqrt();
    if !entangled {
        return Ok(0.0);
    }
    let outer = (2.0 + s_loc).powi(2) - 9.0 * s_global;
    if outer < 0.0 {
        return Err(Error::NoPhysicalState(format!(
            "(2 + S_loc)^2 < 9 S for S_loc = {s_loc}, S = {s_global}"
        )));
    }
    let root = outer.sqrt();
    let inner = 2.0 + 8.0 * s_loc - s_loc * s_loc - 9.0 * s_global + (s_loc - 1.0) * root;
    let value = (-(2.0 + s_loc) + root + 2.0 * inner.max(0.0).sqrt()) / 6.0;
    Ok(value.max(0.0))
}

/// Number of sub-intervals scanned for sign changes when inverting the
/// GLEMS entropy.
const QLEMS_SCAN: usize = 256;

/// `g` of the symmetric GLEMS whose image has entropies `(s_loc, s_global)`.
///
/// The image entropy is not monotone in `g` close to the separable edge
/// `g = 2s - 1`, so every bracketed root is refined and the largest `g`
/// (least negativity) is returned.
pub fn qlems_g(s_loc: f64, s_global: f64) -> Result<f64> {
    let s = symmetric_s_for_local_entropy(s_loc)?;
    let entropy = |g: f64| -> Result<f64> { mapped_global_entropy(&glems(s, 0.0, g)?) };
    let (lo, hi) = (1.0, 2.0 * s - 1.0);
    if hi <= lo {
        // pure marginals: only the vacuum
        return if s_global.abs() < 1e-12 {
            Ok(1.0)
        } else {
            Err(Error::NoPhysicalState(format!("S_loc = 0 forces S = 0, got {s_global}")))
        };
    }
    let grid: Vec<f64> = (0..=QLEMS_SCAN)
        .map(|k| lo + (hi - lo) * k as f64 / QLEMS_SCAN as f64)
        .collect();
    let mut values = Vec::with_capacity(grid.len());
    for &g in &grid {
        values.push(entropy(g)? - s_global);
    }
    let mut best: Option<f64> = None;
    for k in (0..QLEMS_SCAN).rev() {
        let (mut g0, mut g1) = (grid[k], grid[k + 1]);
        let (mut f0, f1) = (values[k], values[k + 1]);
        if f1 == 0.0 {
            best = Some(g1);
            break;
        }
        if f0 * f1 > 0.0 {
            continue;
        }
        while g1 - g0 > 1e-12 * g1 {
            let mid = 0.5 * (g0 + g1);
            let fm = entropy(mid)? - s_global;
            if (fm < 0.0) == (f0 < 0.0) {
                g0 = mid;
                f0 = fm;
            } else {
                g1 = mid;
            }
        }
        best = Some(0.5 * (g0 + g1));
        break;
    }
    best.ok_or_else(|| {
        Error::NoPhysicalState(format!(
            "no symmetric GLEMS with S_loc = {s_loc}, S = {s_global}"
        ))
    })
}

/// Negativity of the symmetric QLEMS (numerical inversion, no closed form).
pub fn qlems_negativity(s_loc: f64, s_global: f64) -> Result<f64> {
    let s = symmetric_s_for_local_entropy(s_loc)?;
    let g = qlems_g(s_loc, s_global)?;
    mapped_negativity(&glems(s, 0.0, g)?)
}

/// Qubit marginals entropy -> field diagonal entry, inverting `1 - 1/a^2`.
pub fn marginal_from_qubit_entropy(s_qubit: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s_qubit) {
        return Err(Error::Domain(format!("marginal entropy {s_qubit} outside [0, 1)")));
    }
    Ok(1.0 / (1.0 - s_qubit).sqrt())
}

/// Largest mapped negativity at fixed qubit marginal entropies, reached by
/// GMEMMS resources.
pub fn gmemms_image_boundary(s_a: f64, s_b: f64) -> Result<f64> {
    let a = marginal_from_qubit_entropy(s_a)?;
    let b = marginal_from_qubit_entropy(s_b)?;
    mapped_negativity(&gmemms(a, b)?)
}

/// Finite-cutoff member of an asymptotic family together with its distance
/// to the limiting qubit state.
#[derive(Debug, Clone)]
pub struct Approximant {
    pub resource: StandardFormCM,
    pub image: TwoQubitState,
    pub target: TwoQubitState,
    /// Trace distance between image and target.
    pub residual: f64,
}

fn approximant(resource: StandardFormCM, target: TwoQubitState) -> Result<Approximant> {
    let image = steady_state(&resource)?.to_state()?;
    let residual = trace_distance(image.matrix(), target.matrix());
    Ok(Approximant {
        resource,
        image,
        target,
        residual,
    })
}

/// Werner weight `p = 2 / (1 + g^2)` approached by the large-`s` GLEMS
/// images at global field purity `1/g`.
pub fn werner_weight(g: f64) -> f64 {
    2.0 / (1.0 + g * g)
}

/// Symmetric GLEMS with `s = s_cutoff` against `werner(2/(1+g^2))`.
pub fn werner_limit(g: f64, s_cutoff: f64) -> Result<Approximant> {
    approximant(glems(s_cutoff, 0.0, g)?, werner(werner_weight(g))?)
}

/// Squeezed thermal state at `cosh 2r = cosh_2r` against `werner(1/g)`, the
/// point of the MEMS curve its images approach under strong squeezing.
pub fn squeezed_thermal_limit(g: f64, cosh_2r: f64) -> Result<Approximant> {
    if !(cosh_2r >= 1.0) {
        return Err(Error::Domain(format!("cosh 2r = {cosh_2r} < 1")));
    }
    let r = 0.5 * cosh_2r.acosh();
    approximant(squeezed_thermal(g, r)?, werner(1.0 / g)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    QubitEntropyMax,
    QubitEntropyMin,
    NmaxVsFieldNegativity,
    MemsWerner,
    QmemsSurface,
    QlemsSurface,
    GmemmsRidge,
}

impl CurveKind {
    pub const ALL: [CurveKind; 7] = [
        CurveKind::QubitEntropyMax,
        CurveKind::QubitEntropyMin,
        CurveKind::NmaxVsFieldNegativity,
        CurveKind::MemsWerner,
        CurveKind::QmemsSurface,
        CurveKind::QlemsSurface,
        CurveKind::GmemmsRidge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::QubitEntropyMax => "qubit_entropy_max",
            CurveKind::QubitEntropyMin => "qubit_entropy_min",
            CurveKind::NmaxVsFieldNegativity => "nmax_vs_field_negativity",
            CurveKind::MemsWerner => "mems_werner",
            CurveKind::QmemsSurface => "qmems_surface",
            CurveKind::QlemsSurface => "qlems_surface",
            CurveKind::GmemmsRidge => "gmemms_ridge",
        }
    }

    pub fn is_surface(self) -> bool {
        matches!(
            self,
            CurveKind::QmemsSurface | CurveKind::QlemsSurface | CurveKind::GmemmsRidge
        )
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CurveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CurveKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown curve kind '{s}'")))
    }
}

/// Sampled boundary curve or surface. Each row holds the abscissae named in
/// `axes` followed by the ordinates named in `values`.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub axes: Vec<&'static str>,
    pub values: Vec<&'static str>,
    pub parameters: Vec<(String, String)>,
    pub rows: Vec<Vec<f64>>,
}

impl BoundaryCurve {
    /// CSV with `#`-prefixed provenance lines followed by a header row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# kind={}", self.kind)?;
        writeln!(out, "# axes={}", self.axes.join(";"))?;
        for (k, v) in &self.parameters {
            writeln!(out, "# {k}={v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<&str> = self.axes.iter().chain(self.values.iter()).copied().collect();
        w.write_record(&header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| fmt_f64(*v)))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Sampling resolution: points per curve and per surface axis.
#[derive(Debug, Clone, Copy)]
pub struct Resolution {
    pub curve_points: usize,
    pub surface_points: usize,
}

impl Default for Resolution {
    fn default() -> Self {
        Resolution {
            curve_points: 200,
            surface_points: 50,
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Upper end of the local-entropy axis on generated surfaces.
pub const SURFACE_MAX_LOCAL_ENTROPY: f64 = 0.97;

/// Entropy grid on which the QMEMS and QLEMS sheets are compared: `n` local
/// entropies in `[0.01, 0.97]` and, for each, `n` global entropies strictly
/// inside `(0, S*)` with `S*` the QMEMS separability threshold.
pub fn entangled_window_grid(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n * n);
    for s_loc in linspace(0.01, SURFACE_MAX_LOCAL_ENTROPY, n) {
        let top = qmems_separability_threshold(s_loc);
        for k in 1..=n {
            out.push((s_loc, top * k as f64 / (n + 1) as f64));
        }
    }
    out
}

/// Samples a boundary curve or surface.
pub fn boundary_curve(kind: CurveKind, res: Resolution, exec: Execution) -> Result<BoundaryCurve> {
    let n = res.curve_points.max(2);
    let m = res.surface_points.max(2);
    let mut parameters = vec![];
    let (axes, values, rows): (Vec<&str>, Vec<&str>, Vec<Vec<f64>>) = match kind {
        CurveKind::QubitEntropyMax | CurveKind::QubitEntropyMin => {
            parameters.push(("points".into(), n.to_string()));
            let f = if kind == CurveKind::QubitEntropyMax {
                qubit_entropy_max
            } else {
                qubit_entropy_min
            };
            let rows = linspace(0.0, 0.995, n)
                .into_iter()
                .map(|x| vec![x, f(x)])
                .collect();
            (vec!["field_entropy"], vec!["qubit_entropy"], rows)
        }
        CurveKind::NmaxVsFieldNegativity => {
            parameters.push(("points".into(), n.to_string()));
            parameters.push(("normalization".into(), "N/(1+N)".into()));
            let rows = linspace(0.0, 0.99, n)
                .into_iter()
                .map(|x| {
                    let n12 = x / (1.0 - x);
                    vec![n12, x, nmax_vs_field_negativity(n12)]
                })
                .collect();
            (
                vec!["field_negativity", "normalized_field_negativity"],
                vec!["qubit_negativity_max"],
                rows,
            )
        }
        CurveKind::MemsWerner => {
            parameters.push(("points".into(), n.to_string()));
            let rows = linspace(0.0, 1.0, n)
                .into_iter()
                .map(|s| vec![s, mems_boundary(s)])
                .collect();
            (vec!["qubit_entropy"], vec!["qubit_negativity_max"], rows)
        }
        CurveKind::QmemsSurface | CurveKind::QlemsSurface => {
            parameters.push(("grid".into(), format!("{m}x{m}")));
            parameters.push(("symmetric".into(), "true".into()));
            let family_lambda = if kind == CurveKind::QmemsSurface { 1.0 } else { -1.0 };
            parameters.push(("lambda".into(), family_lambda.to_string()));
            let locals = linspace(0.0, SURFACE_MAX_LOCAL_ENTROPY, m);
            let cells = map_indexed(m * m, exec, |idx| -> Result<Option<Vec<f64>>> {
                let s_loc = locals[idx / m];
                let s = symmetric_s_for_local_entropy(s_loc)?;
                let g_top = 2.0 * s - 1.0;
                let s_top = if g_top > 1.0 {
                    mapped_global_entropy(&from_entropic_params(&EntropicParams::new(
                        s,
                        0.0,
                        g_top,
                        family_lambda,
                    ))?)?
                } else {
                    0.0
                };
                let s_global = s_top * (idx % m) as f64 / (m - 1) as f64;
                let (g, neg) = if kind == CurveKind::QmemsSurface {
                    match qmems_g(s_loc, s_global) {
                        Ok(g) => (g, qmems_negativity(s_loc, s_global)?),
                        Err(Error::NoPhysicalState(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                } else {
                    match qlems_g(s_loc, s_global) {
                        Ok(g) => (g, qlems_negativity(s_loc, s_global)?),
                        Err(Error::NoPhysicalState(_)) => return Ok(None),
                        Err(e) => return Err(e),
                    }
                };
                Ok(Some(vec![s_loc, s_global, g, neg]))
            });
            let mut rows = Vec::new();
            for cell in cells {
                if let Some(r) = cell? {
                    rows.push(r);
                }
            }
            (vec!["local_entropy", "global_entropy"], vec!["g", "qubit_negativity"], rows)
        }
        CurveKind::GmemmsRidge => {
            parameters.push(("grid".into(), format!("{m}x{m}")));
            let axis = linspace(0.0, 0.95, m);
            let cells = map_indexed(m * m, exec, |idx| {
                let (sa, sb) = (axis[idx / m], axis[idx % m]);
                gmemms_image_boundary(sa, sb).map(|n| vec![sa, sb, n])
            });
            let rows = cells.into_iter().collect::<Result<Vec<_>>>()?;
            (
                vec!["marginal_entropy_a", "marginal_entropy_b"],
                vec!["qubit_negativity_max"],
                rows,
            )
        }
    };
    Ok(BoundaryCurve {
        kind,
        axes,
        values,
        parameters,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{
        gaussian_entropies, gaussian_negativity, validate_cm, EIGEN_TOL,
    };
    use crate::qubit::{linear_entropy, negativity, product_boundary_state};
    use approx::assert_abs_diff_eq;

    #[test]
    fn gmems_glems_examples() {
        let cm = gmems(2.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(cm.c_plus, 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(cm.c_minus, -(2f64.sqrt()), epsilon = 1e-12);
        let lo = glems(2.0, 0.0, 2.0).unwrap();
        assert_abs_diff_eq!(lo.det().sqrt(), 2.0, epsilon = 1e-12);
        assert!(gaussian_negativity(&lo).unwrap() < gaussian_negativity(&cm).unwrap());
        for s in [1.0, 1.5, 4.0] {
            let (x, y) = (gmems(s, 0.0, 1.0).unwrap(), glems(s, 0.0, 1.0).unwrap());
            assert_abs_diff_eq!(x.c_plus, y.c_plus, epsilon = 1e-12);
            assert_abs_diff_eq!(x.c_minus, y.c_minus, epsilon = 1e-12);
        }
        assert!(gmems(2.0, 0.0, 3.5).is_err());
    }

    #[test]
    fn squeezed_thermal_examples() {
        // cosh 2r = 2
        let r = 0.5 * 2f64.acosh();
        let cm = squeezed_thermal(1.0, r).unwrap();
        assert_abs_diff_eq!(cm.a, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cm.c_plus, 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(cm.c_minus, -(3f64.sqrt()), epsilon = 1e-12);

        let cm = squeezed_thermal(4.0, 0.0).unwrap();
        assert_eq!((cm.a, cm.b, cm.c_plus, cm.c_minus), (2.0, 2.0, 0.0, 0.0));
        assert_eq!(gaussian_negativity(&cm).unwrap(), 0.0);

        let cm = squeezed_thermal(4.0, 0.5).unwrap();
        assert_abs_diff_eq!(cm.c_plus * cm.c_plus, cm.a * cm.a - 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gaussian_entropies(&cm).unwrap().global, 0.75, epsilon = 1e-12);
        let twin = gmems(cm.a, 0.0, 4.0).unwrap();
        assert_abs_diff_eq!(twin.c_plus, cm.c_plus, epsilon = 1e-10);
        assert_abs_diff_eq!(twin.c_minus, cm.c_minus, epsilon = 1e-10);
        assert!(squeezed_thermal(0.5, 0.1).is_err());
    }

    #[test]
    fn gmemms_examples() {
        let cm = gmemms(2.0, 2.0).unwrap();
        assert_abs_diff_eq!(cm.c_plus, 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(cm.det(), 1.0, epsilon = 1e-12);

        let cm = gmemms(3.0, 2.0).unwrap();
        assert_eq!((cm.c_plus, cm.c_minus), (2.0, -2.0));
        assert_abs_diff_eq!(cm.det().sqrt(), 2.0, epsilon = 1e-12);
        assert!(validate_cm(&cm, EIGEN_TOL).unwrap().is_physical());

        let cm = gmemms(5.0, 1.0).unwrap();
        assert_eq!((cm.c_plus, cm.c_minus), (0.0, -0.0));
        for (a, b) in [(1.5, 4.0), (7.0, 2.2), (3.3, 3.3)] {
            let cm = gmemms(a, b).unwrap();
            assert_abs_diff_eq!(cm.det().sqrt(), (a - b).abs() + 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn entropy_bound_examples() {
        assert_eq!(qubit_entropy_max(0.0), 0.0);
        assert_eq!(qubit_entropy_min(0.0), 0.0);
        assert_abs_diff_eq!(qubit_entropy_max(1.0 - 1.0 / 3f64.sqrt()), 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(qubit_entropy_min(0.5), 0.5, epsilon = 1e-15);
        let s = linear_entropy(&product_boundary_state(2.0).unwrap());
        assert_abs_diff_eq!(qubit_entropy_min(0.5), s, epsilon = 1e-15);
        for k in 0..100 {
            let x = k as f64 / 100.0;
            let g = 1.0 / (1.0 - x);
            assert!(qubit_entropy_max(x) >= qubit_entropy_min(x));
            assert_abs_diff_eq!(qubit_entropy_min(x), 2.0 * (g * g - 1.0) / (3.0 * g * g), epsilon = 1e-12);
        }
    }

    #[test]
    fn nmax_examples() {
        assert_eq!(nmax_vs_field_negativity(0.0), 0.0);
        assert_abs_diff_eq!(nmax_vs_field_negativity(1.0 + 3f64.sqrt()), 3f64.sqrt() / 2.0, epsilon = 1e-12);
        assert_eq!(nmax_vs_field_negativity(f64::INFINITY), 1.0);
        let mut prev = -1.0;
        for k in 0..200 {
            let v = nmax_vs_field_negativity(k as f64 * 0.1);
            assert!(v > prev && v < 1.0);
            prev = v;
        }
    }

    #[test]
    fn mems_examples() {
        assert_eq!(mems_boundary(0.0), 1.0);
        assert_abs_diff_eq!(mems_boundary(0.75), 0.25, epsilon = 1e-15);
        assert_eq!(mems_boundary(8.0 / 9.0), 0.0);
        assert_eq!(mems_boundary(0.95), 0.0);
        assert!(mems_boundary(8.0 / 9.0 - 1e-12) < 1e-11);
        let w = werner(0.5).unwrap();
        assert_abs_diff_eq!(mems_boundary(linear_entropy(&w)), negativity(&w), epsilon = 1e-12);
    }

    #[test]
    fn qmems_examples() {
        assert_abs_diff_eq!(qmems_g(0.75, 2.0 / 3.0).unwrap(), 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(qmems_g(0.0, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        let want = (2f64.sqrt() - 1.0) / 4.0;
        assert_abs_diff_eq!(qmems_negativity(0.75, 2.0 / 3.0).unwrap(), want, epsilon = 1e-12);
        // pure marginals: vacuum resource, product image
        assert_eq!(qmems_negativity(0.0, 0.0).unwrap(), 0.0);
        // separability threshold at S_loc = 3/4: 9S = 3 sqrt(0.8125) + 3.75
        let s_star = (3.0 * 0.8125f64.sqrt() + 3.75) / 9.0;
        assert_abs_diff_eq!(qmems_separability_threshold(0.75), s_star, epsilon = 1e-15);
        assert_eq!(qmems_negativity(0.75, s_star + 1e-3).unwrap(), 0.0);
        assert!(qmems_negativity(0.75, s_star - 1e-3).unwrap() > 0.0);
        assert!(matches!(qmems_g(0.2, 0.99), Err(Error::NoPhysicalState(_))));
    }

    #[test]
    fn qmems_round_trip_on_grid() {
        for i in 1..10 {
            let s_loc = 0.09 * i as f64;
            let s = symmetric_s_for_local_entropy(s_loc).unwrap();
            for k in 1..10 {
                let target = qmems_separability_threshold(s_loc) * k as f64 / 10.0;
                let g = qmems_g(s_loc, target).unwrap();
                let cm = gmems(s, 0.0, g).unwrap();
                assert_abs_diff_eq!(mapped_global_entropy(&cm).unwrap(), target, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn qlems_examples() {
        assert_eq!(qlems_negativity(0.0, 0.0).unwrap(), 0.0);
        let hi = qmems_negativity(0.75, 2.0 / 3.0).unwrap();
        let lo = qlems_negativity(0.75, 2.0 / 3.0).unwrap();
        assert!(lo <= hi + 1e-10 && lo >= hi - 0.04, "{lo} vs {hi}");
        let s = symmetric_s_for_local_entropy(0.75).unwrap();
        let g = qlems_g(0.75, 2.0 / 3.0).unwrap();
        assert_abs_diff_eq!(
            mapped_global_entropy(&glems(s, 0.0, g).unwrap()).unwrap(),
            2.0 / 3.0,
            epsilon = 1e-10
        );
        assert!(qlems_g(0.5, 0.999).is_err());
    }

    #[test]
    fn gmemms_boundary_examples() {
        // pure marginals force a product state
        assert_eq!(gmemms_image_boundary(0.0, 0.0).unwrap(), 0.0);
        // equal marginals: pure image, N = sqrt(S_loc)
        for s in [0.1, 0.5, 0.75, 0.9] {
            assert_abs_diff_eq!(gmemms_image_boundary(s, s).unwrap(), s.sqrt(), epsilon = 1e-12);
        }
        let v = gmemms_image_boundary(0.75, 0.5).unwrap();
        assert!(v.is_finite() && v > 0.0 && v < 0.5f64.sqrt());
    }

    #[test]
    fn werner_limit_shrinks_with_cutoff() {
        let g = 1.5;
        let mut prev = f64::INFINITY;
        for s in [10.0, 50.0, 100.0] {
            let r = werner_limit(g, s).unwrap().residual;
            assert!(r < prev);
            prev = r;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn squeezing_limit_shrinks_with_r() {
        let g = 2.0;
        let mut prev = f64::INFINITY;
        for ch in [2.0, 5.0, 20.0, 100.0] {
            let r = squeezed_thermal_limit(g, ch).unwrap().residual;
            assert!(r < prev, "{ch}: {r}");
            prev = r;
        }
        assert!(prev < 1e-2);
    }

    #[test]
    fn curves_export_with_header() {
        for kind in CurveKind::ALL {
            let res = Resolution {
                curve_points: 20,
                surface_points: 6,
            };
            let curve = boundary_curve(kind, res, Execution::Sequential).unwrap();
            assert!(!curve.rows.is_empty(), "{kind}");
            assert!(curve.rows.iter().flatten().all(|v| v.is_finite()));
            let mut buf = Vec::new();
            curve.write_csv(&mut buf).unwrap();
            let text = String::from_utf8(buf).unwrap();
            assert!(text.starts_with(&format!("# kind={kind}\n")));
            assert_eq!(kind, kind.name().parse().unwrap());
        }
        let mems = boundary_curve(CurveKind::MemsWerner, Resolution::default(), Execution::Parallel).unwrap();
        assert_eq!(mems.rows.len(), 200);
        assert!(mems.rows.iter().filter(|r| r[0] >= 8.0 / 9.0).all(|r| r[1] == 0.0));
    }
}
