//! Sign vectors, their orbits under the twisted cyclic shift, and the finite
//! point lattices on which Bernoulli polynomial differences telescope.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::alpha::{alpha_context, is_odd_prime};
use crate::cyclotomic::{horizontal_integer_gap, CyclotomicContext, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::rational::{int, rat};

pub const MAX_SIGN_LENGTH: usize = 22;

/// An element of `{±1}^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if entries.is_empty() || entries.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("sign vectors have nonempty ±1 entries".into()));
        }
        Ok(SignVector(entries))
    }

    /// Entry j is `-1` exactly when bit j of `bits` is set.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        SignVector((0..n).map(|j| if bits >> j & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn bits(&self) -> u64 {
        self.0.iter().enumerate().filter(|(_, &s)| s < 0).map(|(j, _)| 1u64 << j).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn signature(&self) -> i8 {
        self.0.iter().product()
    }

    /// `c·(s_1..s_N) = (-s_N, s_1, …, s_{N-1})`; multiplies the position by ω.
    pub fn act(&self) -> Self {
        let n = self.0.len();
        let mut out = Vec::with_capacity(n);
        out.push(-self.0[n - 1]);
        out.extend_from_slice(&self.0[..n - 1]);
        SignVector(out)
    }

    /// `ω·s = Σ_j s_j ω^j` with `ω = ζ_{2N}`.
    pub fn position(&self, ctx: &Arc<CyclotomicContext>) -> CyclotomicNumber {
        let n = self.0.len() as u64;
        let m = ctx.conductor();
        let step = (m / (2 * n)) as usize;
        let mut poly = vec![crate::rational::Rational::default(); m as usize];
        for (j, &s) in self.0.iter().enumerate() {
            poly[(j * step) % m as usize] += int(s as i64);
        }
        CyclotomicNumber::from_poly(ctx, poly)
    }

    fn float_position(&self) -> (f64, f64) {
        let n = self.0.len() as f64;
        self.0.iter().enumerate().fold((0.0, 0.0), |(x, y), (j, &s)| {
            let t = std::f64::consts::PI * j as f64 / n;
            (x + s as f64 * t.cos(), y + s as f64 * t.sin())
        })
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    if n > MAX_SIGN_LENGTH {
        return Err(Error::Budget { what: "sign-vector length", value: n as u64, limit: MAX_SIGN_LENGTH as u64 });
    }
    Ok(())
}

/// All `2^N` sign vectors, ordered by their bit pattern.
pub fn enumerate_sign_vectors(n: usize) -> Result<Vec<SignVector>> {
    check_len(n)?;
    Ok((0..1u64 << n).map(|b| SignVector::from_bits(n, b)).collect())
}

/// Argument in `[0, 2π)` (exactly 0 on the positive real axis) and modulus.
fn arg_radius(x: f64, y: f64) -> (f64, f64) {
    let r = x.hypot(y);
    if r < 1e-12 || (y.abs() < 1e-12 && x > 0.0) {
        return (0.0, r);
    }
    (y.atan2(x).rem_euclid(2.0 * std::f64::consts::PI), r)
}

/// Sort key for the minimal-argument representative: argument, then radius,
/// then the sign vector with `+1` preferred entrywise.
fn min_arg_key(s: &SignVector) -> (f64, f64, Vec<i8>) {
    let (x, y) = s.float_position();
    let (a, r) = arg_radius(x, y);
    (a, r, s.0.iter().map(|v| -v).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub elements: Vec<SignVector>,
    pub representative: SignVector,
    pub size: usize,
}

/// Partition `S(N)` into orbits of the twisted shift.
pub fn cyclic_orbits(n: usize) -> Result<Vec<Orbit>> {
    check_len(n)?;
    let mut seen: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for b in 0..1u64 << n {
        if seen.contains(&b) {
            continue;
        }
        let start = SignVector::from_bits(n, b);
        let mut elements = vec![start.clone()];
        seen.insert(b);
        let mut cur = start.act();
        while cur != start {
            seen.insert(cur.bits());
            let next = cur.act();
            elements.push(cur);
            cur = next;
        }
        let representative = elements
            .iter()
            .min_by(|a, b| min_arg_key(a).partial_cmp(&min_arg_key(b)).expect("finite keys"))
            .expect("orbits are nonempty")
            .clone();
        out.push(Orbit { size: elements.len(), elements, representative });
    }
    Ok(out)
}

/// Orbit sizes with multiplicities.
pub fn orbit_size_histogram(n: usize) -> Result<BTreeMap<usize, usize>> {
    let mut h = BTreeMap::new();
    for o in cyclic_orbits(n)? {
        *h.entry(o.size).or_insert(0) += 1;
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub representative: SignVector,
    pub signature: i8,
    pub position: CyclotomicNumber,
    pub arg: f64,
    pub radius: f64,
    pub size: usize,
}

/// One row per orbit of size `2p`, sorted by radius then argument. The
/// alternating pair (whose position is 0) is left out.
pub fn orbit_representatives_min_arg(p: u64) -> Result<Vec<OrbitRow>> {
    if !is_odd_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let ctx = alpha_context(p);
    let mut rows: Vec<OrbitRow> = cyclic_orbits(p as usize)?
        .into_iter()
        .filter(|o| o.size == 2 * p as usize)
        .map(|o| {
            let position = o.representative.position(&ctx);
            let z = position.to_complex();
            let (arg, radius) = arg_radius(z.re, z.im);
            OrbitRow {
                signature: o.representative.signature(),
                representative: o.representative,
                position,
                arg,
                radius,
                size: o.size,
            }
        })
        .collect();
    rows.sort_by(|a, b| (a.radius, a.arg).partial_cmp(&(b.radius, b.arg)).expect("finite"));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: String,
    pub index: usize,
    pub position: CyclotomicNumber,
    pub sign: i8,
    pub orbit: Option<usize>,
}

fn alternating(j: usize) -> i8 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ζ^a + ζ^b` in conductor `ctx`.
fn root_pair(ctx: &Arc<CyclotomicContext>, a: i64, b: i64) -> CyclotomicNumber {
    &CyclotomicNumber::root_of_unity(ctx, a) + &CyclotomicNumber::root_of_unity(ctx, b)
}

/// The 36 points `ω^{11j}+ω^{11j+11}` (A), `ω^{11j+1}+ω^{11j+10}` (B),
/// `ω^{11j+2}+ω^{11j+9}` (C), `ω = e^{iπ/6}`, with weights `(-1)^j`.
/// Stored at conductor 24; point j has argument `-π(2j+1)/12`.
pub fn six_interval_lattice() -> Vec<LabeledPoint> {
    let ctx = CyclotomicContext::get(24);
    let mut out = Vec::with_capacity(36);
    for (name, off) in [("A", 0i64), ("B", 1), ("C", 2)] {
        for j in 0..12usize {
            let e = 11 * j as i64;
            out.push(LabeledPoint {
                label: format!("{name}{j}"),
                index: j,
                position: root_pair(&ctx, 2 * (e + off), 2 * (e + 11 - off)),
                sign: alternating(j),
                orbit: None,
            });
        }
    }
    out
}

/// `{±1±i}`: the points `√2/ζ_8^{2j+1}`, `j = 0..3`, at conductor 8.
pub fn two_interval_lattice() -> Vec<LabeledPoint> {
    let ctx = CyclotomicContext::get(8);
    let z = root_pair(&ctx, 1, 7);
    (0..4)
        .map(|j| LabeledPoint {
            label: format!("P{j}"),
            index: j,
            position: z.mul_root(-(2 * j as i64 + 1)),
            sign: alternating(j),
            orbit: None,
        })
        .collect()
}

/// The 16 points `z/ζ_16^{2j+1}` for `z = √(1±1/√2)`, at conductor 16.
pub fn four_interval_lattice() -> Vec<LabeledPoint> {
    let ctx = CyclotomicContext::get(16);
    let sqrt2 = root_pair(&ctx, 2, 14);
    let outer = (&root_pair(&ctx, 1, 15) * &sqrt2).scale(&rat(1, 2));
    let inner = (&root_pair(&ctx, 3, 13) * &sqrt2).scale(&rat(1, 2));
    let mut out = Vec::with_capacity(16);
    for (name, z) in [("A", outer), ("B", inner)] {
        for j in 0..8usize {
            out.push(LabeledPoint {
                label: format!("{name}{j}"),
                index: j,
                position: z.mul_root(-(2 * j as i64 + 1)),
                sign: alternating(j),
                orbit: None,
            });
        }
    }
    out
}

/// The 2^N points `ω·s` with orbit ids, labelled by their sign pattern.
pub fn sign_lattice(n: usize) -> Result<Vec<LabeledPoint>> {
    let ctx = alpha_context(n as u64);
    let mut out = Vec::with_capacity(1 << n);
    for (id, orbit) in cyclic_orbits(n)?.into_iter().enumerate() {
        for s in orbit.elements {
            out.push(LabeledPoint {
                label: s.to_string(),
                index: s.bits() as usize,
                position: s.position(&ctx),
                sign: s.signature(),
                orbit: Some(id),
            });
        }
    }
    out.sort_by_key(|p| p.index);
    Ok(out)
}

/// `X = Y + gap` with `gap > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPair {
    pub right: String,
    pub left: String,
    pub gap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingReport {
    pub pairs: Vec<PointPair>,
    pub unpaired: Vec<String>,
}

impl PairingReport {
    pub fn is_integral(&self) -> bool {
        self.unpaired.is_empty()
    }

    /// Number of pairs per gap length.
    pub fn gap_histogram(&self) -> BTreeMap<i64, usize> {
        let mut h = BTreeMap::new();
        for p in &self.pairs {
            *h.entry(p.gap).or_insert(0) += 1;
        }
        h
    }
}

/// Maximum matching on the integer-gap graph.
///
/// Having an integer horizontal gap is an equivalence relation (with equal
/// points allowed), so each class is a complete multipartite graph whose parts
/// are coincident points. Sorting a class by real part and matching `i` with
/// `i + ⌊n/2⌋` is a maximum matching of such a graph; when the class has no
/// repeated point, consecutive neighbours are matched instead, which keeps
/// gaps minimal.
pub fn find_integral_pairs(points: &[LabeledPoint]) -> Result<PairingReport> {
    if let Some(first) = points.first() {
        for p in points {
            if p.position.conductor() != first.position.conductor() {
                return Err(Error::ConductorMismatch {
                    left: first.position.conductor(),
                    right: p.position.conductor(),
                });
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let head = &points[class[0]].position;
            if *head == p.position || horizontal_integer_gap(&p.position, head)?.is_some() {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    for mut class in classes {
        class.sort_by(|&a, &b| {
            let (x, y) = (points[a].position.to_complex().re, points[b].position.to_complex().re);
            x.partial_cmp(&y).expect("finite embeddings")
        });
        let n = class.len();
        let distinct = (1..n).all(|t| points[class[t]].position != points[class[t - 1]].position);
        let matches: Vec<(usize, usize)> = if distinct {
            (0..n / 2).map(|t| (class[2 * t], class[2 * t + 1])).collect()
        } else {
            (0..n / 2).map(|t| (class[t], class[t + n / 2])).collect()
        };
        let mut used = HashSet::new();
        for (lo, hi) in matches {
            if let Some(g) = horizontal_integer_gap(&points[hi].position, &points[lo].position)? {
                used.insert(lo);
                used.insert(hi);
                pairs.push(PointPair {
                    right: points[hi].label.clone(),
                    left: points[lo].label.clone(),
                    gap: g.to_i64().expect("lattice gaps are small"),
                });
            }
        }
        unpaired.extend(class.iter().filter(|i| !used.contains(i)).map(|&i| points[i].label.clone()));
    }
    pairs.sort_by(|a, b| (a.gap, &a.right).cmp(&(b.gap, &b.right)));
    unpaired.sort();
    Ok(PairingReport { pairs, unpaired })
}

/// The explicit 6-interval pairing `(X, Y)` with `X = Y + gap`, as listed in
/// the source text. Golden fixture for [`find_integral_pairs`].
pub const SIX_INTERVAL_PAIRS: [(&str, &str, i64); 18] = [
    ("A1", "B2", 1),
    ("A2", "A3", 1),
    ("B3", "A4", 1),
    ("C4", "B5", 1),
    ("C7", "B6", 1),
    ("B8", "A7", 1),
    ("A9", "A8", 1),
    ("A10", "B9", 1),
    ("B11", "C10", 1),
    ("B0", "C1", 1),
    ("C11", "C6", 1),
    ("C0", "C5", 1),
    ("A0", "C3", 2),
    ("C2", "A5", 2),
    ("C9", "A6", 2),
    ("A11", "C8", 2),
    ("B10", "B7", 2),
    ("B1", "B4", 2),
];

/// Left ends of the gap-1 pairs.
pub const P1: [&str; 12] = ["A3", "A4", "A7", "A8", "B2", "B5", "B6", "B9", "C1", "C5", "C6", "C10"];
/// Left ends of the gap-2 pairs.
pub const P2: [&str; 6] = ["A5", "A6", "B4", "B7", "C3", "C8"];

fn lookup<'a>(points: &'a [LabeledPoint], label: &str) -> &'a LabeledPoint {
    points.iter().find(|p| p.label == label).expect("label from the fixed lattice")
}

fn weighted_sum(labels: &[&str], f: impl Fn(&CyclotomicNumber) -> CyclotomicNumber) -> CyclotomicNumber {
    let pts = six_interval_lattice();
    let ctx = CyclotomicContext::get(24);
    labels.iter().fold(CyclotomicNumber::zero(&ctx), |acc, l| {
        let p = lookup(&pts, l);
        let v = f(&p.position);
        // (-1)^{j-1}
        if p.index % 2 == 1 {
            &acc + &v
        } else {
            &acc - &v
        }
    })
}

/// `(Σ_{P2} (-1)^{j-1} g, Σ_{P2} (-1)^{j-1} f)` with `f(Z) = (12n+6)Z^{12n+5}` and
/// `g(Z) = (12n+6)((Z+1)^{12n+5} + Z^{12n+5})`.
pub fn p2_cancellation(n: u64) -> (CyclotomicNumber, CyclotomicNumber) {
    let e = 12 * n + 5;
    let c = int(12 * n as i64 + 6);
    let f = |z: &CyclotomicNumber| z.pow(e).scale(&c);
    let g = |z: &CyclotomicNumber| {
        let one = CyclotomicNumber::one(z.context());
        (&(z + &one).pow(e) + &z.pow(e)).scale(&c)
    };
    (weighted_sum(&P2, g), weighted_sum(&P2, f))
}

/// `S_n = (i/12) Σ_{P1 ∪ P2} (-1)^{j-1} f(Z_j)`, the lattice evaluation of the
/// 12-gap sum.
pub fn geometric_s_n(n: u64) -> CyclotomicNumber {
    let e = 12 * n + 5;
    let c = int(12 * n as i64 + 6);
    let all: Vec<&str> = P1.iter().chain(P2.iter()).copied().collect();
    let s = weighted_sum(&all, |z| z.pow(e).scale(&c));
    let i = CyclotomicNumber::root_of_unity(s.context(), 6);
    (&i * &s).scale(&rat(1, 12))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureSelector {
    TwoInterval,
    FourInterval,
    SixInterval,
    SignLattice(usize),
}

impl FromStr for FigureSelector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two_interval" => Ok(FigureSelector::TwoInterval),
            "four_interval" => Ok(FigureSelector::FourInterval),
            "six_interval" => Ok(FigureSelector::SixInterval),
            _ => {
                let inner = s
                    .strip_prefix("sign_lattice")
                    .map(|r| r.trim_matches(|c| c == '(' || c == ')' || c == ':' || c == '='))
                    .ok_or_else(|| Error::Parse(format!("unknown figure selector {s:?}")))?;
                let n = inner.parse().map_err(|_| Error::Parse(format!("bad sign_lattice size in {s:?}")))?;
                Ok(FigureSelector::SignLattice(n))
            }
        }
    }
}

impl fmt::Display for FigureSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FigureSelector::TwoInterval => f.write_str("two_interval"),
            FigureSelector::FourInterval => f.write_str("four_interval"),
            FigureSelector::SixInterval => f.write_str("six_interval"),
            FigureSelector::SignLattice(n) => write!(f, "sign_lattice({n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub label: String,
    pub re: f64,
    pub im: f64,
    pub coeffs: Vec<String>,
    pub sign: i8,
    pub orbit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    pub gap: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureMeta {
    #[serde(rename = "N")]
    pub n: usize,
    pub conductor: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub points: Vec<PointRecord>,
    pub edges: Vec<EdgeRecord>,
    pub meta: FigureMeta,
}

pub fn figure_data(selector: FigureSelector) -> Result<FigureData> {
    let (points, n, with_edges) = match selector {
        FigureSelector::TwoInterval => (two_interval_lattice(), 2, true),
        FigureSelector::FourInterval => (four_interval_lattice(), 4, true),
        FigureSelector::SixInterval => (six_interval_lattice(), 6, true),
        FigureSelector::SignLattice(n) => (sign_lattice(n)?, n, false),
    };
    let edges = if with_edges {
        find_integral_pairs(&points)?
            .pairs
            .into_iter()
            .map(|p| EdgeRecord { a: p.right, b: p.left, gap: p.gap })
            .collect()
    } else {
        Vec::new()
    };
    let conductor = points.first().map_or(1, |p| p.position.conductor());
    let points = points
        .into_iter()
        .map(|p| {
            let z = p.position.to_complex();
            PointRecord {
                label: p.label,
                re: z.re,
                im: z.im,
                coeffs: p.position.coeffs().iter().map(ToString::to_string).collect(),
                sign: p.sign,
                orbit: p.orbit,
            }
        })
        .collect();
    Ok(FigureData { points, edges, meta: FigureMeta { n, conductor } })
}

/// CSV rows `label,re,im,sign,orbit`.
pub fn figure_csv(data: &FigureData) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "re", "im", "sign", "orbit"]).map_err(csv_err)?;
    for p in &data.points {
        let orbit = p.orbit.map(|o| o.to_string()).unwrap_or_default();
        w.write_record([p.label.clone(), p.re.to_string(), p.im.to_string(), p.sign.to_string(), orbit])
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Write the figure data as JSON, or as CSV when the path ends in `.csv`.
pub fn export_figure_data(selector: FigureSelector, path: &Path) -> Result<FigureData> {
    let data = figure_data(selector)?;
    let body = if path.extension().is_some_and(|e| e == "csv") {
        figure_csv(&data)?
    } else {
        serde_json::to_string_pretty(&data)?
    };
    std::fs::write(path, body)?;
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::{a_sequence, omega_power};
    use crate::rational::sign;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_sign_vectors(1).unwrap().len(), 2);
        assert_eq!(enumerate_sign_vectors(3).unwrap().len(), 8);
        assert_eq!(enumerate_sign_vectors(7).unwrap().len(), 128);
        assert!(enumerate_sign_vectors(23).is_err());
    }

    #[test]
    fn action_rotates_positions() {
        let ctx = alpha_context(5);
        let w = omega_power(&ctx, 5, 1);
        for s in enumerate_sign_vectors(5).unwrap() {
            assert_eq!(s.act().position(&ctx), &w * &s.position(&ctx));
            assert_eq!(s.act().signature(), -s.signature());
        }
    }

    #[test]
    fn orbit_structure() {
        let h3 = orbit_size_histogram(3).unwrap();
        assert_eq!(h3, BTreeMap::from([(2, 1), (6, 1)]));
        let h7 = orbit_size_histogram(7).unwrap();
        assert_eq!(h7, BTreeMap::from([(2, 1), (14, 9)]));
        for (size, _) in orbit_size_histogram(4).unwrap() {
            assert_eq!(8 % size, 0);
        }
        let small = cyclic_orbits(7).unwrap().into_iter().find(|o| o.size == 2).unwrap();
        let mut e: Vec<String> = small.elements.iter().map(ToString::to_string).collect();
        e.sort();
        assert_eq!(e, vec!["+-+-+-+", "-+-+-+-"]);
    }

    #[test]
    fn p7_table() {
        let rows = orbit_representatives_min_arg(7).unwrap();
        assert_eq!(rows.len(), 9);
        assert!((rows[3].radius - 2.0).abs() < 1e-6);
        assert!((rows[8].radius - 4.493959).abs() < 1e-6);
        assert_eq!(rows[3].representative.to_string(), "++-+-+-");
        let p3 = orbit_representatives_min_arg(3).unwrap();
        assert_eq!(p3.len(), 1);
        assert!((p3[0].radius - 2.0).abs() < 1e-12);
        assert!(orbit_representatives_min_arg(4).is_err());
    }

    #[test]
    fn six_interval_geometry() {
        let pts = six_interval_lattice();
        assert_eq!(pts.len(), 36);
        let a0 = pts[0].position.to_complex();
        assert!((a0.norm() - (2.0 + 3f64.sqrt()).sqrt()).abs() < 1e-12);
        for p in &pts {
            let z = p.position.to_complex();
            let want = -std::f64::consts::PI * (2 * p.index + 1) as f64 / 12.0;
            let d = (z.arg() - want).rem_euclid(2.0 * std::f64::consts::PI);
            assert!(d < 1e-9 || (2.0 * std::f64::consts::PI - d) < 1e-9, "{}", p.label);
        }
        let gap = |a: &str, b: &str| {
            horizontal_integer_gap(&lookup(&pts, a).position, &lookup(&pts, b).position).unwrap()
        };
        assert_eq!(gap("A1", "B2"), Some(1.into()));
        assert_eq!(gap("A0", "C3"), Some(2.into()));
    }

    #[test]
    fn pairings() {
        let two = find_integral_pairs(&two_interval_lattice()).unwrap();
        assert!(two.is_integral());
        assert_eq!(two.gap_histogram(), BTreeMap::from([(2, 2)]));
        let six = find_integral_pairs(&six_interval_lattice()).unwrap();
        assert!(six.is_integral());
        assert_eq!(six.gap_histogram(), BTreeMap::from([(1, 12), (2, 6)]));
        let four = find_integral_pairs(&four_interval_lattice()).unwrap();
        assert!(four.is_integral());
        let ctx = CyclotomicContext::get(8);
        let lone = LabeledPoint {
            label: "r2".into(),
            index: 0,
            position: root_pair(&ctx, 1, 7),
            sign: 1,
            orbit: None,
        };
        let r = find_integral_pairs(&[lone]).unwrap();
        assert_eq!(r.unpaired, vec!["r2".to_string()]);
    }

    #[test]
    fn duplicate_points_still_match() {
        let ctx = CyclotomicContext::get(4);
        let mk = |l: &str, v: i64| LabeledPoint {
            label: l.into(),
            index: 0,
            position: CyclotomicNumber::from_int(&ctx, v),
            sign: 1,
            orbit: None,
        };
        let r = find_integral_pairs(&[mk("a", 0), mk("b", 0), mk("c", 1), mk("d", 2)]).unwrap();
        assert!(r.is_integral());
        assert_eq!(r.pairs.len(), 2);
    }

    #[test]
    fn six_interval_golden_pairs_are_exact() {
        let pts = six_interval_lattice();
        for (x, y, g) in SIX_INTERVAL_PAIRS {
            let got = horizontal_integer_gap(&lookup(&pts, x).position, &lookup(&pts, y).position).unwrap();
            assert_eq!(got, Some(g.into()), "{x} {y}");
        }
    }

    #[test]
    fn geometric_evaluation_matches_sequence() {
        for n in 0..=3u64 {
            let (g, f) = p2_cancellation(n);
            assert_eq!(g, f);
            let want = int((2 * n as i64 + 1) * sign(n as i64)) * a_sequence(6, 6 * n + 3).unwrap();
            assert_eq!(geometric_s_n(n).to_rational(), Some(want), "n = {n}");
        }
    }

    #[test]
    fn selector_parsing() {
        assert_eq!("six_interval".parse::<FigureSelector>().unwrap(), FigureSelector::SixInterval);
        assert_eq!("sign_lattice(7)".parse::<FigureSelector>().unwrap(), FigureSelector::SignLattice(7));
        assert_eq!("sign_lattice:5".parse::<FigureSelector>().unwrap(), FigureSelector::SignLattice(5));
        assert!("hex".parse::<FigureSelector>().is_err());
    }

    #[test]
    fn figure_records() {
        let six = figure_data(FigureSelector::SixInterval).unwrap();
        assert_eq!((six.points.len(), six.edges.len()), (36, 18));
        let two = figure_data(FigureSelector::TwoInterval).unwrap();
        assert_eq!((two.points.len(), two.edges.len()), (4, 2));
        let s7 = figure_data(FigureSelector::SignLattice(7)).unwrap();
        assert_eq!(s7.points.len(), 128);
        let csv = figure_csv(&two).unwrap();
        assert!(csv.starts_with("label,re,im,sign,orbit"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn export_writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let json = dir.path().join("six.json");
        export_figure_data(FigureSelector::SixInterval, &json).unwrap();
        let back: FigureData = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
        assert_eq!(back.meta.conductor, 24);
        let csv = dir.path().join("two.csv");
        export_figure_data(FigureSelector::TwoInterval, &csv).unwrap();
        assert!(std::fs::read_to_string(&csv).unwrap().contains("P0"));
        assert!(export_figure_data(FigureSelector::TwoInterval, &dir.path().join("no/such/dir.json")).is_err());
    }
}
