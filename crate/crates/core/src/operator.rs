//! Sparse linear operators and vectors over tensor-product bases.

use std::collections::BTreeMap;

use crate::exactnum::{Field, Rat};

/// Sparse square matrix; zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<S: Field = Rat> {
    dim: usize,
    entries: BTreeMap<(usize, usize), S>,
}

/// Sparse vector; zero entries are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVec<S: Field = Rat> {
    dim: usize,
    entries: BTreeMap<usize, S>,
}

fn accumulate<K: Ord, S: Field>(map: &mut BTreeMap<K, S>, k: K, v: S) {
    use std::collections::btree_map::Entry;
    match map.entry(k) {
        Entry::Vacant(e) => {
            if !v.is_zero() {
                e.insert(v);
            }
        }
        Entry::Occupied(mut e) => {
            let s = e.get().clone() + v;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl<S: Field> Operator<S> {
    pub fn zero(dim: usize) -> Self {
        Operator { dim, entries: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> Self {
        Operator { dim, entries: (0..dim).map(|i| ((i, i), S::one())).collect() }
    }

    /// Build from a row-major dense array.
    pub fn from_dense(dim: usize, dense: &[S]) -> Self {
        assert_eq!(dense.len(), dim * dim);
        let mut op = Operator::zero(dim);
        for (k, v) in dense.iter().enumerate() {
            op.add_entry(k / dim, k % dim, v.clone());
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), S> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: S) {
        assert!(i < self.dim && j < self.dim, "index out of range");
        accumulate(&mut self.entries, (i, j), v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = self.clone();
        for (&(i, j), v) in &o.entries {
            accumulate(&mut out.entries, (i, j), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Operator::zero(self.dim);
        }
        Operator { dim: self.dim, entries: self.entries.iter().map(|(&k, v)| (k, v.clone() * c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    /// Matrix product `self * o`.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut rows: BTreeMap<usize, Vec<(usize, &S)>> = BTreeMap::new();
        for (&(k, j), v) in &o.entries {
            rows.entry(k).or_default().push((j, v));
        }
        let mut out = Operator::zero(self.dim);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    accumulate(&mut out.entries, (i, j), a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// Kronecker product; `self` indexes the more significant factor.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Operator::zero(self.dim * o.dim);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &o.entries {
                out.entries.insert((i * o.dim + k, j * o.dim + l), a.clone() * b.clone());
            }
        }
        out
    }

    /// `self |v>`.
    pub fn apply(&self, v: &StateVec<S>) -> StateVec<S> {
        assert_eq!(self.dim, v.dim);
        let mut out = StateVec::zero(self.dim);
        for (&(i, j), a) in &self.entries {
            if let Some(b) = v.entries.get(&j) {
                accumulate(&mut out.entries, i, a.clone() * b.clone());
            }
        }
        out
    }

    /// `<v| self`, with `v` read as a row vector.
    pub fn apply_left(&self, v: &StateVec<S>) -> StateVec<S> {
        assert_eq!(self.dim, v.dim);
        let mut out = StateVec::zero(self.dim);
        for (&(i, j), a) in &self.entries {
            if let Some(b) = v.entries.get(&i) {
                accumulate(&mut out.entries, j, b.clone() * a.clone());
            }
        }
        out
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> Operator<T> {
        let mut out = Operator::zero(self.dim);
        for (&(i, j), v) in &self.entries {
            out.add_entry(i, j, f(v));
        }
        out
    }
}

impl<S: Field> StateVec<S> {
    pub fn zero(dim: usize) -> Self {
        StateVec { dim, entries: BTreeMap::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        StateVec { dim, entries: BTreeMap::from([(i, S::one())]) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<usize, S> {
        &self.entries
    }

    pub fn get(&self, i: usize) -> S {
        self.entries.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_entry(&mut self, i: usize, v: S) {
        assert!(i < self.dim, "index out of range");
        accumulate(&mut self.entries, i, v);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        let mut out = self.clone();
        for (&i, v) in &o.entries {
            accumulate(&mut out.entries, i, v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return StateVec::zero(self.dim);
        }
        StateVec { dim: self.dim, entries: self.entries.iter().map(|(&k, v)| (k, v.clone() * c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    /// Bilinear pairing `sum_i a_i b_i` (no conjugation).
    pub fn dot(&self, o: &Self) -> S {
        assert_eq!(self.dim, o.dim);
        let mut acc = S::zero();
        for (i, a) in &self.entries {
            if let Some(b) = o.entries.get(i) {
                acc = acc + a.clone() * b.clone();
            }
        }
        acc
    }

    pub fn kron(&self, o: &Self) -> Self {
        let mut out = StateVec::zero(self.dim * o.dim);
        for (&i, a) in &self.entries {
            for (&k, b) in &o.entries {
                out.entries.insert(i * o.dim + k, a.clone() * b.clone());
            }
        }
        out
    }
}

impl StateVec<num_complex::Complex64> {
    /// Largest modulus of any component.
    pub fn max_norm(&self) -> f64 {
        self.entries.values().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(dim: usize, v: &[i64]) -> Operator<Rat> {
        Operator::from_dense(dim, &v.iter().map(|&x| Rat::int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn product_and_kron() {
        let a = op(2, &[1, 2, 3, 4]);
        let b = op(2, &[0, 1, 1, 0]);
        assert_eq!(a.mul(&b), op(2, &[2, 1, 4, 3]));
        let k = a.kron(&Operator::identity(2));
        assert_eq!(k.get(2, 0), Rat::int(3));
        assert_eq!(k.get(3, 1), Rat::int(3));
        assert_eq!(k.get(3, 0), Rat::zero());
    }

    #[test]
    fn left_and_right_application_agree_with_dot() {
        let a = op(3, &[1, 0, 2, -1, 3, 0, 0, 5, 1]);
        let mut u = StateVec::zero(3);
        u.add_entry(0, Rat::int(2));
        u.add_entry(2, Rat::new(1, 2));
        let mut v = StateVec::zero(3);
        v.add_entry(1, Rat::int(-1));
        v.add_entry(2, Rat::int(4));
        assert_eq!(a.apply_left(&u).dot(&v), u.dot(&a.apply(&v)));
    }

    #[test]
    fn cancellation_drops_entries() {
        let a = op(2, &[1, 0, 0, 1]);
        assert!(a.sub(&Operator::identity(2)).is_zero());
        assert!(a.sub(&a).entries().is_empty());
    }
}
