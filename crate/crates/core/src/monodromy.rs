//! Monodromy matrices of inhomogeneous chains built from site-local R-blocks.

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::operator::Operator;
use crate::vertexmodel::{rmatrix_entries, VertexKind};

/// One quantum site: the vertex kind coupling it to the auxiliary space and
/// its inhomogeneity.
#[derive(Clone, Debug)]
pub struct Site<S: Field> {
    pub kind: VertexKind,
    pub rapidity: S,
}

/// `T(l) = R_1(l, s_1) ... R_L(l, s_L)` as a `d x d` matrix of operators on
/// the chain, site 1 being the most significant tensor factor.
pub fn monodromy<S: Field>(l: &S, sites: &[Site<S>]) -> Result<Vec<Vec<Operator<S>>>> {
    let d = match sites.first() {
        Some(s) => s.kind.dim(),
        None => return Err(Error::SizeError("monodromy of an empty chain".into())),
    };
    if sites.iter().any(|s| s.kind.dim() != d) {
        return Err(Error::SizeMismatch("sites with different local dimensions".into()));
    }
    let mut m: Vec<Vec<Operator<S>>> = (0..d)
        .map(|a| (0..d).map(|b| if a == b { Operator::identity(1) } else { Operator::zero(1) }).collect())
        .collect();
    for site in sites {
        let r = rmatrix_entries(site.kind, l, &site.rapidity)?;
        let block = |a: usize, b: usize| {
            let mut op = Operator::zero(d);
            for p in 0..d {
                for q in 0..d {
                    op.add_entry(p, q, r[(a * d + p) * d * d + b * d + q].clone());
                }
            }
            op
        };
        let blocks: Vec<Vec<Operator<S>>> = (0..d).map(|a| (0..d).map(|b| block(a, b)).collect()).collect();
        let mut next = Vec::with_capacity(d);
        for a in 0..d {
            let mut row = Vec::with_capacity(d);
            for b in 0..d {
                let mut acc = Operator::zero(m[a][0].dim() * d);
                for k in 0..d {
                    if m[a][k].is_zero() || blocks[k][b].is_zero() {
                        continue;
                    }
                    acc = acc.add(&m[a][k].kron(&blocks[k][b]));
                }
                row.push(acc);
            }
            next.push(row);
        }
        m = next;
    }
    Ok(m)
}
