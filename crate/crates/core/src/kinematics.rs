//! Mode structure at fixed co-moving frequency: the eight roots per side,
//! their classification, the subluminal intervals and the kinematic scenario.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::medium::{DispersionSide, MediumParams, Side};
use crate::poly;
use crate::scalar::Real;

/// |Im k| below which a root counts as propagating (inverse length units).
pub const TOL_IMAG: f64 = 1e-8;
/// Relative distance from a critical frequency treated as the edge itself.
pub const EDGE_TOL: f64 = 1e-10;
/// Group velocities below this fraction of c are treated as turning points.
pub const VG_TOL: f64 = 1e-12;

const MAX_NEWTON: usize = 80;
const CRIT_SCAN_POINTS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormSign {
    Positive,
    Negative,
}

impl NormSign {
    pub fn value(self) -> i32 {
        match self {
            NormSign::Positive => 1,
            NormSign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Nature {
    Propagating,
    Evanescent,
}

/// Branch tags, declared in the display order used for every matrix axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    No,
    Uo,
    Mo,
    Lo,
    C,
    Ul,
    Nl,
    Ll,
    Nul,
}

impl Tag {
    pub const ALL: [Tag; 9] = [Tag::No, Tag::Uo, Tag::Mo, Tag::Lo, Tag::C, Tag::Ul, Tag::Nl, Tag::Ll, Tag::Nul];

    pub fn name(self) -> &'static str {
        match self {
            Tag::No => "no",
            Tag::Uo => "uo",
            Tag::Mo => "mo",
            Tag::Lo => "lo",
            Tag::C => "c",
            Tag::Ul => "ul",
            Tag::Nl => "nl",
            Tag::Ll => "ll",
            Tag::Nul => "nul",
        }
    }

    pub fn is_optical(self) -> bool {
        matches!(self, Tag::No | Tag::Uo | Tag::Mo | Tag::Lo)
    }
}

/// Ordering is side first (L before R), then [`Tag`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeLabel {
    pub side: Side,
    pub tag: Tag,
}

impl ModeLabel {
    pub fn new(tag: Tag, side: Side) -> Self {
        ModeLabel { side, tag }
    }

    /// Every label in axis order.
    pub fn all() -> Vec<ModeLabel> {
        [Side::Left, Side::Right]
            .iter()
            .flat_map(|&s| Tag::ALL.iter().map(move |&t| ModeLabel::new(t, s)))
            .collect()
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag.name(), self.side.letter())
    }
}

impl std::str::FromStr for ModeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ModeLabel::all()
            .into_iter()
            .find(|l| l.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode label {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution<T> {
    pub wavenumber: Complex<T>,
    pub comoving_frequency: T,
    pub lab_frequency: Complex<T>,
    pub norm_sign: Option<NormSign>,
    pub group_velocity: Option<T>,
    pub nature: Nature,
    pub label: ModeLabel,
}

impl<T: Real> ModeSolution<T> {
    pub fn is_propagating(&self) -> bool {
        self.nature == Nature::Propagating
    }

    /// Whether `e^{ikx}` decays away from the front on this mode's side.
    pub fn decays_away_from_front(&self) -> bool {
        match self.label.side {
            Side::Left => self.wavenumber.im < T::zero(),
            Side::Right => self.wavenumber.im > T::zero(),
        }
    }
}

/// Turning points of the optical branch on one side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideCriticals<T> {
    pub omega_min: T,
    pub omega_max: T,
    /// Lab frequencies at which the merging pair sits at `omega_min` / `omega_max`.
    pub lab_at_min: T,
    pub lab_at_max: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Criticals<T> {
    pub left: SideCriticals<T>,
    pub right: SideCriticals<T>,
}

impl<T: Real> Criticals<T> {
    /// `[ω_minL, ω_minR, ω_maxL, ω_maxR]`.
    pub fn edges(&self) -> [T; 4] {
        [self.left.omega_min, self.right.omega_min, self.left.omega_max, self.right.omega_max]
    }

    pub fn side(&self, side: Side) -> &SideCriticals<T> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    AHorizonlessLow,
    BWhiteHole,
    CHorizonlessMid,
    DBlackHole,
    EHigh,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::AHorizonlessLow,
        Scenario::BWhiteHole,
        Scenario::CHorizonlessMid,
        Scenario::DBlackHole,
        Scenario::EHigh,
    ];

    pub fn letter(self) -> char {
        match self {
            Scenario::AHorizonlessLow => 'A',
            Scenario::BWhiteHole => 'B',
            Scenario::CHorizonlessMid => 'C',
            Scenario::DBlackHole => 'D',
            Scenario::EHigh => 'E',
        }
    }

    pub fn has_horizon(self) -> bool {
        matches!(self, Scenario::BWhiteHole | Scenario::DBlackHole)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencySolution<T> {
    pub omega: T,
    pub left_modes: Vec<ModeSolution<T>>,
    pub right_modes: Vec<ModeSolution<T>>,
    pub scenario: Option<Scenario>,
    pub in_basis: Vec<ModeLabel>,
    pub out_basis: Vec<ModeLabel>,
    /// Decaying evanescent modes that enter the matching system.
    pub evanescent: Vec<ModeLabel>,
}

impl<T: Real> FrequencySolution<T> {
    pub fn modes(&self, side: Side) -> &[ModeSolution<T>] {
        match side {
            Side::Left => &self.left_modes,
            Side::Right => &self.right_modes,
        }
    }

    /// The mode carrying `label`; for `c` the member that decays away from the front.
    pub fn mode(&self, label: ModeLabel) -> Option<&ModeSolution<T>> {
        self.modes(label.side)
            .iter()
            .find(|m| m.label == label && (label.tag != Tag::C || m.decays_away_from_front()))
    }
}

/// Newton polish of a root of `F(q) = q² − ω² − G(Ω)`. Real seeds stay real.
fn polish<T: Real>(s: &DispersionSide<T>, omega: T, seed: Complex<T>, real: bool) -> Option<Complex<T>> {
    let mut q = seed;
    if real {
        q.im = T::zero();
    }
    let eps = T::epsilon();
    let mut last_step = T::infinity();
    for it in 0..MAX_NEWTON {
        let (f, fp) = s.dispersion_with_derivative(omega, q);
        if fp.norm() == T::zero() {
            return None;
        }
        let mut dq = f / fp;
        if real {
            dq.im = T::zero();
        }
        q = q - dq;
        let step = dq.norm();
        let small = T::lit(8.0) * eps * q.norm().max(T::one());
        if step <= small || (it > 4 && step >= last_step && step < T::lit(1e-6) * q.norm().max(T::one())) {
            return Some(q);
        }
        last_step = step;
    }
    None
}

/// The eight roots of the dispersion relation, classified and labelled.
/// `crit` feeds the positive-optical labelling; without it a lone positive
/// optical root is tagged `lo`.
pub fn solve_modes<T: Real>(s: &DispersionSide<T>, crit: Option<&SideCriticals<T>>, omega: T) -> Result<Vec<ModeSolution<T>>> {
    let fail = |reason: String| Error::NonConvergence { omega: omega.to_f64_lossy(), side: s.side, reason };
    if !omega.is_finite() {
        return Err(fail("non-finite frequency".into()));
    }
    let c = s.light_speed;
    let coeffs: Vec<f64> = s.reduced_polynomial(omega).iter().map(|x| x.to_f64_lossy()).collect();
    let seeds = poly::companion_roots(&coeffs);
    if seeds.len() != 8 {
        return Err(fail(format!("{} seeds", seeds.len())));
    }
    let tol_q = T::lit(TOL_IMAG) * c;
    let mut roots: Vec<Complex<T>> = Vec::with_capacity(8);
    for z in &seeds {
        let thr = 1e-7 * z.norm().max(1.0);
        let seed = Complex::new(T::lit(z.re), T::lit(z.im));
        if z.im.abs() <= thr {
            roots.push(polish(s, omega, seed, true).ok_or_else(|| fail(format!("real seed {z} did not converge")))?);
        } else if z.im > 0.0 {
            let q = polish(s, omega, seed, false).ok_or_else(|| fail(format!("complex seed {z} did not converge")))?;
            if q.im.abs() < tol_q {
                return Err(fail(format!("complex seed {z} polished onto the real axis")));
            }
            let q = if q.im < T::zero() { q.conj() } else { q };
            roots.push(q);
            roots.push(q.conj());
        }
    }
    if roots.len() != 8 {
        return Err(fail(format!("seeds are not closed under conjugation ({} roots)", roots.len())));
    }
    let scale = roots.iter().fold(T::one(), |m, q| m.max(q.norm()));
    for i in 0..8 {
        for j in i + 1..8 {
            if (roots[i] - roots[j]).norm() < T::lit(1e-12) * scale {
                return Err(fail("two seeds converged to the same root".into()));
            }
        }
        let (g, _) = s.g_and_derivative(s.lab_frequency(omega, roots[i]));
        let term = (roots[i] * roots[i]).norm() + omega * omega + g.norm();
        let res = s.dispersion(omega, roots[i]).norm() / term;
        if !(res < T::lit(1e-9)) {
            return Err(fail(format!("residual {:e} after polish", res.to_f64_lossy())));
        }
    }
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));

    let [r0, r1, r2] = s.sorted_resonances();
    let mut modes = Vec::with_capacity(8);
    let mut positive_optical = Vec::new();
    for q in roots {
        let lab = s.lab_frequency(omega, q);
        let propagating = q.im.abs() < tol_q;
        let mut m = ModeSolution {
            wavenumber: q / c,
            comoving_frequency: omega,
            lab_frequency: lab,
            norm_sign: None,
            group_velocity: None,
            nature: if propagating { Nature::Propagating } else { Nature::Evanescent },
            label: ModeLabel::new(Tag::C, s.side),
        };
        if propagating {
            let (_, gp) = s.g_and_derivative(lab);
            let num = q + q - gp.re * (s.gamma * s.beta);
            let den = omega + omega + gp.re * s.gamma;
            m.group_velocity = Some(c * num.re / den);
            let om = lab.re;
            m.norm_sign = Some(if om > T::zero() { NormSign::Positive } else { NormSign::Negative });
            let a = om.abs();
            let band = if a < r0 {
                0
            } else if a < r1 {
                1
            } else if a < r2 {
                2
            } else {
                return Err(Error::Labeling {
                    omega: omega.to_f64_lossy(),
                    side: s.side,
                    reason: format!("real root above every resonance (Ω = {om})"),
                });
            };
            m.label.tag = match (band, om > T::zero()) {
                (0, true) => Tag::Ll,
                (0, false) => Tag::Nl,
                (1, true) => {
                    positive_optical.push(modes.len());
                    Tag::Lo
                }
                (1, false) => Tag::No,
                (_, true) => Tag::Ul,
                (_, false) => Tag::Nul,
            };
        }
        modes.push(m);
    }

    let label_err = |reason: String| Error::Labeling { omega: omega.to_f64_lossy(), side: s.side, reason };
    match (positive_optical.len(), crit) {
        (1, Some(cr)) => {
            let tag = if omega < cr.omega_min {
                Tag::Uo
            } else if omega > cr.omega_max {
                Tag::Lo
            } else {
                return Err(label_err("single positive optical root inside the subluminal interval".into()));
            };
            modes[positive_optical[0]].label.tag = tag;
        }
        (1, None) => {}
        (3, Some(cr)) => {
            let (lo_edge, hi_edge) = if cr.lab_at_min < cr.lab_at_max {
                (cr.lab_at_min, cr.lab_at_max)
            } else {
                (cr.lab_at_max, cr.lab_at_min)
            };
            for &i in &positive_optical {
                let om = modes[i].lab_frequency.re;
                modes[i].label.tag = if om < lo_edge {
                    Tag::Lo
                } else if om > hi_edge {
                    Tag::Uo
                } else {
                    Tag::Mo
                };
            }
        }
        (n, _) => return Err(label_err(format!("{n} positive optical roots"))),
    }

    let mut seen = std::collections::HashSet::new();
    for m in modes.iter().filter(|m| m.is_propagating()) {
        if !seen.insert(m.label.tag) {
            return Err(label_err(format!("two propagating roots tagged {}", m.label.tag.name())));
        }
    }
    if modes.iter().filter(|m| !m.is_propagating()).count() > 2 {
        return Err(label_err("more than one evanescent pair".into()));
    }
    Ok(modes)
}

/// Group index `n + Ω dn/dΩ` in the rest frame.
fn group_index<T: Real>(s: &DispersionSide<T>, om: T) -> Option<T> {
    let n2 = T::one() + s.susceptibility(om);
    if !(n2 > T::zero()) {
        return None;
    }
    let n = n2.sqrt();
    Some(n + om * s.susceptibility_derivative(om) / (n + n))
}

/// Turning points of the optical branch. A root pair merges where the rest
/// frame group velocity equals the front speed, i.e. where `n_g(Ω) = 1/β`;
/// those lab frequencies are bracketed by a scan and bisected to full
/// precision, then mapped to `ω = γΩ(1 − βn(Ω))`.
pub fn find_critical_frequencies<T: Real>(s: &DispersionSide<T>) -> Result<SideCriticals<T>> {
    let [r0, r1, _] = s.sorted_resonances();
    let target = s.beta.recip();
    let h = |om: T| group_index(s, om).map(|g| g - target);
    let lo = r0 * T::lit(1.0 + 1e-9);
    let hi = r1 * T::lit(1.0 - 1e-9);
    let ratio = (hi / lo).ln() / T::lit(CRIT_SCAN_POINTS as f64);
    let at = |i: usize| lo * (ratio * T::lit(i as f64)).exp();
    let mut found = Vec::new();
    let mut prev: Option<(T, T)> = None;
    for i in 0..=CRIT_SCAN_POINTS {
        let om = at(i);
        let cur = h(om).map(|v| (om, v));
        if let (Some((a, fa)), Some((b, fb))) = (prev, cur) {
            if (fa < T::zero()) != (fb < T::zero()) {
                found.push(bisect(&h, a, b, fa));
            }
        }
        prev = cur;
    }
    if found.len() != 2 {
        return Err(Error::NoSubluminalInterval(s.side));
    }
    let to_comoving = |om: T| -> Result<T> {
        let n = s.refractive_index(om)?;
        Ok(s.gamma * om * (T::one() - s.beta * n))
    };
    let (wa, wb) = (to_comoving(found[0])?, to_comoving(found[1])?);
    let (omega_min, lab_at_min, omega_max, lab_at_max) = if wa < wb {
        (wa, found[0], wb, found[1])
    } else {
        (wb, found[1], wa, found[0])
    };
    Ok(SideCriticals { omega_min, omega_max, lab_at_min, lab_at_max })
}

fn bisect<T: Real>(h: &impl Fn(T) -> Option<T>, mut a: T, mut b: T, fa: T) -> T {
    let neg_a = fa < T::zero();
    for _ in 0..250 {
        let m = (a + b) * T::lit(0.5);
        if m <= a || m >= b {
            break;
        }
        match h(m) {
            Some(v) if (v < T::zero()) == neg_a => a = m,
            _ => b = m,
        }
    }
    (a + b) * T::lit(0.5)
}

/// Interval lookup; frequencies within [`EDGE_TOL`] (relative) of an edge are refused.
pub fn classify_scenario<T: Real>(omega: T, criticals: &[T; 4]) -> Result<Scenario> {
    for &e in criticals {
        if (omega - e).abs() <= T::lit(EDGE_TOL) * e.abs() {
            return Err(Error::Boundary { omega: omega.to_f64_lossy(), edge: e.to_f64_lossy() });
        }
    }
    let [min_l, min_r, max_l, max_r] = *criticals;
    Ok(if omega < min_l {
        Scenario::AHorizonlessLow
    } else if omega < min_r {
        Scenario::BWhiteHole
    } else if omega < max_l {
        Scenario::CHorizonlessMid
    } else if omega < max_r {
        Scenario::DBlackHole
    } else {
        Scenario::EHigh
    })
}

/// In/out bases for the propagating modes (left: `v_g > 0` is incoming,
/// right: `v_g < 0` is incoming) plus the decaying evanescent modes.
#[allow(clippy::type_complexity)]
pub fn assign_in_out<T: Real>(
    left: &[ModeSolution<T>],
    right: &[ModeSolution<T>],
) -> Result<(Vec<ModeLabel>, Vec<ModeLabel>, Vec<ModeLabel>)> {
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    let mut evan = Vec::new();
    let mut omega = T::zero();
    for m in left.iter().chain(right.iter()) {
        omega = m.comoving_frequency;
        if let Some(vg) = m.group_velocity {
            if vg.abs() < T::lit(VG_TOL) {
                return Err(Error::Boundary { omega: omega.to_f64_lossy(), edge: omega.to_f64_lossy() });
            }
            let incoming = match m.label.side {
                Side::Left => vg > T::zero(),
                Side::Right => vg < T::zero(),
            };
            if incoming {
                ins.push(m.label);
            } else {
                outs.push(m.label);
            }
        } else if m.decays_away_from_front() {
            evan.push(m.label);
        }
    }
    ins.sort();
    outs.sort();
    evan.sort();
    if ins.len() != outs.len() {
        return Err(Error::Unbalanced { omega: omega.to_f64_lossy(), n_in: ins.len(), n_out: outs.len() });
    }
    Ok((ins, outs, evan))
}

/// Both sides of the front with their turning points.
#[derive(Debug, Clone)]
pub struct Front<T> {
    pub params: MediumParams<T>,
    pub left: DispersionSide<T>,
    pub right: DispersionSide<T>,
    pub criticals: Option<Criticals<T>>,
}

impl<T: Real> Front<T> {
    pub fn new(params: MediumParams<T>) -> Result<Self> {
        params.validate()?;
        let left = params.side(Side::Left);
        let right = params.side(Side::Right);
        let criticals = match (find_critical_frequencies(&left), find_critical_frequencies(&right)) {
            (Ok(l), Ok(r)) => Some(Criticals { left: l, right: r }),
            _ => None,
        };
        Ok(Front { params, left, right, criticals })
    }

    pub fn side(&self, side: Side) -> &DispersionSide<T> {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn solve_side(&self, side: Side, omega: T) -> Result<Vec<ModeSolution<T>>> {
        solve_modes(self.side(side), self.criticals.as_ref().map(|c| c.side(side)), omega)
    }

    pub fn solve(&self, omega: T) -> Result<FrequencySolution<T>> {
        let scenario = match &self.criticals {
            Some(c) => Some(classify_scenario(omega, &c.edges())?),
            None => None,
        };
        let left_modes = self.solve_side(Side::Left, omega)?;
        let right_modes = self.solve_side(Side::Right, omega)?;
        let (in_basis, out_basis, evanescent) = assign_in_out(&left_modes, &right_modes)?;
        Ok(FrequencySolution { omega, left_modes, right_modes, scenario, in_basis, out_basis, evanescent })
    }
}
