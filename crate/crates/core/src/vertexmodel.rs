//! Rational R-matrices, Yang-Baxter residuals and exact contraction of
//! rectangular vertex lattices with fixed or summed boundary edges.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rat};

/// `f(l, m) = (l - m + 1)/(l - m)`.
pub fn f_weight<F: Field>(l: &F, m: &F) -> Result<F> {
    let d = l.clone() - m.clone();
    if d.is_zero() {
        return Err(Error::PoleAtPoint(format!("f({l}, {m})")));
    }
    (d.clone() + F::one()).div(&d)
}

/// `g(l, m) = 1/(l - m)`.
pub fn g_weight<F: Field>(l: &F, m: &F) -> Result<F> {
    let d = l.clone() - m.clone();
    if d.is_zero() {
        return Err(Error::PoleAtPoint(format!("g({l}, {m})")));
    }
    F::one().div(&d)
}

pub fn weight_f(l: &Rat, m: &Rat) -> Result<Rat> {
    f_weight(l, m)
}

pub fn weight_g(l: &Rat, m: &Rat) -> Result<Rat> {
    g_weight(l, m)
}

/// `f({a},{b}) = prod_i prod_j f(a_i, b_j)`; 1 if either set is empty.
pub fn f_sets<F: Field>(a: &[F], b: &[F]) -> Result<F> {
    let mut acc = F::one();
    for x in a {
        for y in b {
            acc = acc * f_weight(x, y)?;
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VertexKind {
    Su2,
    Su3,
    Su3Star,
    Su2Normalized,
    Perm2,
}

impl VertexKind {
    /// Number of states on each edge.
    pub fn dim(self) -> usize {
        match self {
            VertexKind::Su2 | VertexKind::Su2Normalized | VertexKind::Perm2 => 2,
            VertexKind::Su3 | VertexKind::Su3Star => 3,
        }
    }
}

/// Entries of the R-matrix as a row-major `d^2 x d^2` array. Row index is
/// `d*a + b` for incoming states (a on the first space, b on the second),
/// column index likewise for outgoing states.
pub fn rmatrix_entries<F: Field>(kind: VertexKind, l: &F, m: &F) -> Result<Vec<F>> {
    let d = kind.dim();
    let n = d * d;
    let mut r = vec![F::zero(); n * n];
    let at = |a: usize, b: usize, c: usize, e: usize| (d * a + b) * n + (d * c + e);
    match kind {
        VertexKind::Su2 | VertexKind::Su3 => {
            let f = f_weight(l, m)?;
            let g = g_weight(l, m)?;
            for a in 0..d {
                for b in 0..d {
                    if a == b {
                        r[at(a, a, a, a)] = f.clone();
                    } else {
                        r[at(a, b, a, b)] = F::one();
                        r[at(a, b, b, a)] = g.clone();
                    }
                }
            }
        }
        VertexKind::Su3Star => {
            // R(-l, -m) with the second space transposed.
            let base = rmatrix_entries(VertexKind::Su3, &-l.clone(), &-m.clone())?;
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        for e in 0..d {
                            r[at(a, b, c, e)] = base[at(a, e, c, b)].clone();
                        }
                    }
                }
            }
        }
        VertexKind::Su2Normalized => {
            // R/f written so that l = m is regular: b = (l-m)/(l-m+1), c = 1/(l-m+1).
            let s = l.clone() - m.clone() + F::one();
            if s.is_zero() {
                return Err(Error::PoleAtPoint(format!("normalised R-matrix at ({l}, {m})")));
            }
            let b = (l.clone() - m.clone()).div(&s)?;
            let c = F::one().div(&s)?;
            r[at(0, 0, 0, 0)] = F::one();
            r[at(1, 1, 1, 1)] = F::one();
            r[at(0, 1, 0, 1)] = b.clone();
            r[at(1, 0, 1, 0)] = b;
            r[at(0, 1, 1, 0)] = c.clone();
            r[at(1, 0, 0, 1)] = c;
        }
        VertexKind::Perm2 => {
            for a in 0..2 {
                for b in 0..2 {
                    r[at(a, b, b, a)] = F::one();
                }
            }
        }
    }
    Ok(r)
}

/// Dense array of rationals with labelled legs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tensor {
    leg_dims: Vec<usize>,
    leg_labels: Vec<String>,
    entries: Vec<Rat>,
}

impl Tensor {
    pub fn new(leg_dims: Vec<usize>, leg_labels: Vec<String>, entries: Vec<Rat>) -> Result<Tensor> {
        if leg_dims.len() != leg_labels.len() {
            return Err(Error::SizeMismatch("one label per leg required".into()));
        }
        let n: usize = leg_dims.iter().product();
        if n != entries.len() {
            return Err(Error::SizeMismatch(format!("{} entries for {n} slots", entries.len())));
        }
        Ok(Tensor { leg_dims, leg_labels, entries })
    }

    pub fn leg_dims(&self) -> &[usize] {
        &self.leg_dims
    }

    pub fn leg_labels(&self) -> &[String] {
        &self.leg_labels
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    /// Entry at 0-based multi-index, first leg most significant.
    pub fn get(&self, idx: &[usize]) -> &Rat {
        assert_eq!(idx.len(), self.leg_dims.len());
        let k = idx.iter().zip(&self.leg_dims).fold(0, |acc, (&i, &d)| {
            assert!(i < d);
            acc * d + i
        });
        &self.entries[k]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }
}

/// The R-matrix as a tensor with legs (in_row, in_col, out_row, out_col).
pub fn build_rmatrix(kind: VertexKind, l: &Rat, m: &Rat) -> Result<Tensor> {
    let d = kind.dim();
    let labels = ["in_row", "in_col", "out_row", "out_col"].map(String::from).to_vec();
    Tensor::new(vec![d; 4], labels, rmatrix_entries(kind, l, m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum YbCombo {
    Su2,
    Su3,
    MixedStar,
}

/// Dense square matrix helper for three-space products.
fn dense_mul(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = &a[i * n + k];
            if x.is_zero() {
                continue;
            }
            for j in 0..n {
                let y = &b[k * n + j];
                if !y.is_zero() {
                    out[i * n + j] += x * y;
                }
            }
        }
    }
    out
}

/// Embed a two-space R-matrix acting on spaces (p, q) of three, p < q.
fn embed(r: &[Rat], d: usize, p: usize, q: usize) -> Vec<Rat> {
    let n = d * d * d;
    let mut out = vec![Rat::zero(); n * n];
    let split = |i: usize| [i / (d * d), (i / d) % d, i % d];
    for i in 0..n {
        let si = split(i);
        for j in 0..n {
            let sj = split(j);
            let spectator = 3 - p - q;
            if si[spectator] != sj[spectator] {
                continue;
            }
            let v = &r[(d * si[p] + si[q]) * d * d + d * sj[p] + sj[q]];
            if !v.is_zero() {
                out[i * n + j] = v.clone();
            }
        }
    }
    out
}

/// `R_12(l,m) R_13(l,n) R_23(m,n) - R_23(m,n) R_13(l,n) R_12(l,m)`, with the
/// last two factors starred for `MixedStar`. Legs: three incoming then three
/// outgoing.
pub fn yang_baxter_residual(combo: YbCombo, l: &Rat, m: &Rat, n: &Rat) -> Result<Tensor> {
    let (k12, k3) = match combo {
        YbCombo::Su2 => (VertexKind::Su2, VertexKind::Su2),
        YbCombo::Su3 => (VertexKind::Su3, VertexKind::Su3),
        YbCombo::MixedStar => (VertexKind::Su3, VertexKind::Su3Star),
    };
    let d = k12.dim();
    let r12 = embed(&rmatrix_entries(k12, l, m)?, d, 0, 1);
    let r13 = embed(&rmatrix_entries(k3, l, n)?, d, 0, 2);
    let r23 = embed(&rmatrix_entries(k3, m, n)?, d, 1, 2);
    let sz = d * d * d;
    let lhs = dense_mul(&dense_mul(&r12, &r13, sz), &r23, sz);
    let rhs = dense_mul(&dense_mul(&r23, &r13, sz), &r12, sz);
    let diff = lhs.into_iter().zip(rhs).map(|(a, b)| a - b).collect();
    let labels = ["in_1", "in_2", "in_3", "out_1", "out_2", "out_3"].map(String::from).to_vec();
    Tensor::new(vec![d; 6], labels, diff)
}

/// A horizontal line of the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowLine {
    pub rapidity: Rat,
    pub alphabet: usize,
}

/// A vertical line of the lattice; dotted lines carry the starred vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColLine {
    pub rapidity: Rat,
    pub alphabet: usize,
    #[serde(default)]
    pub dotted: bool,
}

/// An external edge, with 1-based line index. Rows are numbered from the top,
/// columns from the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    Left(usize),
    Right(usize),
    Bottom(usize),
    Top(usize),
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Left(i) => write!(f, "left:{i}"),
            Edge::Right(i) => write!(f, "right:{i}"),
            Edge::Bottom(j) => write!(f, "bottom:{j}"),
            Edge::Top(j) => write!(f, "top:{j}"),
        }
    }
}

impl FromStr for Edge {
    type Err = Error;
    fn from_str(s: &str) -> Result<Edge> {
        let bad = || Error::MalformedSpec(format!("bad edge id {s:?}"));
        let (side, idx) = s.split_once(':').ok_or_else(bad)?;
        let i: usize = idx.trim().parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        match side.trim() {
            "left" => Ok(Edge::Left(i)),
            "right" => Ok(Edge::Right(i)),
            "bottom" => Ok(Edge::Bottom(i)),
            "top" => Ok(Edge::Top(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Edge, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Boundary condition on an external edge; states are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Fixed(usize),
    Summed,
}

impl Serialize for Boundary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Boundary::Fixed(k) => s.serialize_u64(*k as u64),
            Boundary::Summed => s.serialize_str("sum"),
        }
    }
}

impl<'de> Deserialize<'de> for Boundary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Boundary, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "sum" => Ok(Boundary::Summed),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|k| Boundary::Fixed(k as usize))
                .ok_or_else(|| de::Error::custom(format!("bad state {n}"))),
            v => Err(de::Error::custom(format!("boundary must be \"sum\" or a state, got {v}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: Vec<RowLine>,
    pub cols: Vec<ColLine>,
    pub boundary: BTreeMap<Edge, Boundary>,
}

impl LatticeSpec {
    pub fn from_json(s: &str) -> Result<LatticeSpec> {
        serde_json::from_str(s).map_err(|e| Error::MalformedSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice spec serialises")
    }

    fn alphabet(&self) -> Result<usize> {
        let mut alph = self.rows.iter().map(|r| r.alphabet).chain(self.cols.iter().map(|c| c.alphabet));
        let Some(d) = alph.next() else {
            return Ok(2);
        };
        if alph.any(|a| a != d) {
            return Err(Error::MalformedSpec("all lines must share one edge alphabet".into()));
        }
        if d != 2 && d != 3 {
            return Err(Error::MalformedSpec(format!("unsupported alphabet {d}")));
        }
        Ok(d)
    }

    /// Check boundary completeness and state ranges; returns the alphabet.
    pub fn validate(&self) -> Result<usize> {
        let d = self.alphabet()?;
        if d == 2 && self.cols.iter().any(|c| c.dotted) {
            return Err(Error::MalformedSpec("dotted columns require a 3-state alphabet".into()));
        }
        let (nr, nc) = (self.rows.len(), self.cols.len());
        let expected: Vec<Edge> = (1..=nr)
            .flat_map(|i| [Edge::Left(i), Edge::Right(i)])
            .chain((1..=nc).flat_map(|j| [Edge::Bottom(j), Edge::Top(j)]))
            .collect();
        for e in &expected {
            match self.boundary.get(e) {
                None => return Err(Error::MalformedSpec(format!("no boundary entry for {e}"))),
                Some(Boundary::Fixed(k)) if *k == 0 || *k > d => {
                    return Err(Error::MalformedSpec(format!("state {k} on {e} outside 1..={d}")))
                }
                _ => {}
            }
        }
        if self.boundary.len() != expected.len() {
            let extra = self.boundary.keys().find(|e| !expected.contains(e)).unwrap();
            return Err(Error::MalformedSpec(format!("boundary entry for nonexistent edge {extra}")));
        }
        Ok(d)
    }

    fn allowed(&self, e: Edge, d: usize) -> Vec<usize> {
        match self.boundary[&e] {
            Boundary::Fixed(k) => vec![k - 1],
            Boundary::Summed => (0..d).collect(),
        }
    }
}

/// Sum over all internal and summed-boundary edge states of the product of
/// vertex weights. Swept row by row from the bottom, carrying a vector over
/// the states of the vertical edges; within a row the horizontal state is
/// carried left to right one vertex at a time.
pub fn contract_lattice(spec: &LatticeSpec) -> Result<Rat> {
    let d = spec.validate()?;
    let nc = spec.cols.len();
    let width = d.pow(nc as u32);
    let pw: Vec<usize> = (0..nc).map(|j| d.pow(j as u32)).collect();
    let digit = |t: usize, j: usize| (t / pw[j]) % d;
    let compatible = |t: usize, edge: fn(usize) -> Edge| {
        (0..nc).all(|j| spec.allowed(edge(j + 1), d).contains(&digit(t, j)))
    };

    let mut weights = Vec::with_capacity(spec.rows.len());
    for row in &spec.rows {
        let mut per_col = Vec::with_capacity(nc);
        for col in &spec.cols {
            let kind = match (d, col.dotted) {
                (2, _) => VertexKind::Su2,
                (_, false) => VertexKind::Su3,
                (_, true) => VertexKind::Su3Star,
            };
            per_col.push(rmatrix_entries(kind, &row.rapidity, &col.rapidity)?);
        }
        weights.push(per_col);
    }

    let mut v: Vec<Rat> = (0..width)
        .map(|t| if compatible(t, Edge::Bottom) { Rat::one() } else { Rat::zero() })
        .collect();

    for i in (0..spec.rows.len()).rev() {
        // w[h * width + t]
        let mut w = vec![Rat::zero(); d * width];
        for h in spec.allowed(Edge::Left(i + 1), d) {
            for t in 0..width {
                w[h * width + t] = v[t].clone();
            }
        }
        for (j, r) in weights[i].iter().enumerate() {
            let mut next = vec![Rat::zero(); d * width];
            for h in 0..d {
                for t in 0..width {
                    let x = &w[h * width + t];
                    if x.is_zero() {
                        continue;
                    }
                    let b = digit(t, j);
                    let base = t - b * pw[j];
                    for h2 in 0..d {
                        for o in 0..d {
                            let rv = &r[(h * d + b) * d * d + h2 * d + o];
                            if rv.is_zero() {
                                continue;
                            }
                            let k = h2 * width + base + o * pw[j];
                            next[k] += x * rv;
                        }
                    }
                }
            }
            w = next;
        }
        let right = spec.allowed(Edge::Right(i + 1), d);
        v = (0..width)
            .map(|t| {
                let mut acc = Rat::zero();
                for &h in &right {
                    acc += &w[h * width + t];
                }
                acc
            })
            .collect();
    }

    let mut total = Rat::zero();
    for (t, x) in v.iter().enumerate() {
        if compatible(t, Edge::Top) {
            total += x;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn weights() {
        assert_eq!(weight_f(&r(1), &r(0)).unwrap(), r(2));
        assert_eq!(weight_g(&r(2), &r(0)).unwrap(), Rat::new(1, 2));
        assert_eq!(weight_g(&r(3), &r(1)).unwrap(), -weight_g(&r(1), &r(3)).unwrap());
        assert!(matches!(weight_f(&r(4), &r(4)), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn su2_pattern() {
        let t = build_rmatrix(VertexKind::Su2, &r(1), &r(0)).unwrap();
        assert_eq!(t.get(&[0, 0, 0, 0]), &r(2));
        assert_eq!(t.get(&[1, 1, 1, 1]), &r(2));
        assert_eq!(t.get(&[0, 1, 0, 1]), &r(1));
        assert_eq!(t.get(&[1, 0, 1, 0]), &r(1));
        assert_eq!(t.get(&[0, 1, 1, 0]), &r(1));
        assert_eq!(t.get(&[1, 0, 0, 1]), &r(1));
        assert_eq!(t.entries().iter().filter(|x| !x.is_zero()).count(), 6);
    }

    #[test]
    fn normalised_is_permutation_at_equal_rapidities() {
        let x = Rat::new(7, 3);
        let n = build_rmatrix(VertexKind::Su2Normalized, &x, &x).unwrap();
        let p = build_rmatrix(VertexKind::Perm2, &r(0), &r(0)).unwrap();
        assert_eq!(n, p);
        // and equals R/f away from it
        let (l, m) = (r(3), Rat::new(1, 2));
        let full = build_rmatrix(VertexKind::Su2, &l, &m).unwrap();
        let f = weight_f(&l, &m).unwrap();
        let norm = build_rmatrix(VertexKind::Su2Normalized, &l, &m).unwrap();
        for (a, b) in full.entries().iter().zip(norm.entries()) {
            assert_eq!(a.checked_div(&f).unwrap(), *b);
        }
    }

    #[test]
    fn star_is_transposed_reflection() {
        let s = build_rmatrix(VertexKind::Su3Star, &r(1), &r(0)).unwrap();
        let base = build_rmatrix(VertexKind::Su3, &r(-1), &r(0)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for e in 0..3 {
                        assert_eq!(s.get(&[a, b, c, e]), base.get(&[a, e, c, b]));
                    }
                }
            }
        }
        // diagonal weight f(-1, 0) = 0, the exchange weight sits on (a,a)->(b,b)
        assert_eq!(s.get(&[0, 0, 0, 0]), &r(0));
        assert_eq!(s.get(&[0, 0, 1, 1]), &r(-1));
        assert_eq!(s.get(&[0, 1, 0, 1]), &r(1));
    }

    /// Rotating an undotted vertex: reading the starred weight with the
    /// column line reversed recovers R(-l,-m).
    #[test]
    fn rotation_identity() {
        let (l, m) = (Rat::new(5, 2), Rat::new(-1, 3));
        let s = build_rmatrix(VertexKind::Su3Star, &l, &m).unwrap();
        let u = build_rmatrix(VertexKind::Su3, &-l.clone(), &-m.clone()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for e in 0..3 {
                        assert_eq!(u.get(&[a, b, c, e]), s.get(&[a, e, c, b]));
                    }
                }
            }
        }
    }

    #[test]
    fn yang_baxter_examples() {
        assert!(yang_baxter_residual(YbCombo::Su2, &r(3), &r(1), &r(0)).unwrap().is_zero());
        assert!(yang_baxter_residual(YbCombo::Su3, &r(5), &r(2), &r(1)).unwrap().is_zero());
        assert!(yang_baxter_residual(YbCombo::MixedStar, &r(4), &r(2), &r(1)).unwrap().is_zero());
    }

    fn dw(l: &[Rat], w: &[Rat]) -> LatticeSpec {
        let mut b = BTreeMap::new();
        for i in 1..=l.len() {
            b.insert(Edge::Left(i), Boundary::Fixed(1));
            b.insert(Edge::Right(i), Boundary::Fixed(2));
        }
        for j in 1..=w.len() {
            b.insert(Edge::Bottom(j), Boundary::Fixed(2));
            b.insert(Edge::Top(j), Boundary::Fixed(1));
        }
        LatticeSpec {
            rows: l.iter().map(|x| RowLine { rapidity: x.clone(), alphabet: 2 }).collect(),
            cols: w.iter().map(|x| ColLine { rapidity: x.clone(), alphabet: 2, dotted: false }).collect(),
            boundary: b,
        }
    }

    #[test]
    fn domain_wall_lattices() {
        assert_eq!(contract_lattice(&dw(&[r(3)], &[r(1)])).unwrap(), Rat::new(1, 2));
        assert_eq!(contract_lattice(&dw(&[r(2), r(4)], &[r(0), r(1)])).unwrap(), Rat::new(2, 3));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let spec = dw(&[r(2), r(4)], &[r(0), r(1)]);
        let s = spec.to_json();
        assert!(s.contains("\"left:1\":1"));
        assert_eq!(LatticeSpec::from_json(&s).unwrap(), spec);
        let mut missing = spec.clone();
        missing.boundary.remove(&Edge::Top(2));
        assert!(matches!(contract_lattice(&missing), Err(Error::MalformedSpec(_))));
        let mut bad_state = spec.clone();
        bad_state.boundary.insert(Edge::Top(2), Boundary::Fixed(3));
        assert!(matches!(contract_lattice(&bad_state), Err(Error::MalformedSpec(_))));
        let mut extra = spec.clone();
        extra.boundary.insert(Edge::Left(3), Boundary::Summed);
        assert!(matches!(contract_lattice(&extra), Err(Error::MalformedSpec(_))));
        let summed = LatticeSpec::from_json(
            r#"{"rows":[{"rapidity":"1","alphabet":2}],"cols":[],"boundary":{"left:1":"sum","right:1":"sum"}}"#,
        )
        .unwrap();
        // single horizontal edge, both ends summed: two states
        assert_eq!(contract_lattice(&summed).unwrap(), r(2));
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(contract_lattice(&dw(&[r(1)], &[r(1)])), Err(Error::PoleAtPoint(_))));
    }
}
