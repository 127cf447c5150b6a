//! Tensor-product structure: Kronecker products, partial traces, embedding of
//! local operators and subsystem permutations.
//!
//! Subsystem 0 is the most significant factor: the basis index of digits
//! `(b_0, .., b_{m-1})` is `sum_k b_k * prod_{j>k} dims_j`, matching [`kron`].

use super::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

/// Kronecker product; row index `r = r_a * b.dim + r_b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = vec![ZERO; n * n];
    for ra in 0..na {
        for ca in 0..na {
            let x = a.get(ra, ca);
            if x == ZERO {
                continue;
            }
            for rb in 0..nb {
                for cb in 0..nb {
                    out[(ra * nb + rb) * n + ca * nb + cb] = x * b.get(rb, cb);
                }
            }
        }
    }
    ComplexMatrix::from_raw(n, out)
}

/// Kronecker product of two state vectors.
pub(crate) fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

pub(crate) fn check_dims(dims: &[usize], total: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidSubsystems(format!(
            "subsystem dimensions {dims:?} must be non-empty and positive"
        )));
    }
    let product: usize = dims.iter().product();
    if product != total {
        return Err(Error::InvalidSubsystems(format!(
            "product of {dims:?} is {product}, matrix dimension is {total}"
        )));
    }
    Ok(())
}

fn check_selection(selection: &[usize], count: usize, what: &str) -> Result<()> {
    if selection.is_empty() {
        return Err(Error::InvalidSubsystems(format!("empty {what} list")));
    }
    if let Some(&bad) = selection.iter().find(|&&k| k >= count) {
        return Err(Error::InvalidSubsystems(format!(
            "{what} index {bad} out of range for {count} subsystems"
        )));
    }
    if selection.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSubsystems(format!(
            "{what} list {selection:?} must be strictly increasing"
        )));
    }
    Ok(())
}

/// For every full basis index, its index within the selected subsystems and
/// within the complementary ones.
fn split_indices(dims: &[usize], selected: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let total: usize = dims.iter().product();
    let mut inner = Vec::with_capacity(total);
    let mut outer = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let (mut i_sel, mut i_rest) = (0usize, 0usize);
        for (k, (&d, &b)) in dims.iter().zip(&digits).enumerate() {
            if selected.contains(&k) {
                i_sel = i_sel * d + b;
            } else {
                i_rest = i_rest * d + b;
            }
        }
        inner.push(i_sel);
        outer.push(i_rest);
        // increment the mixed-radix counter, last subsystem fastest
        for k in (0..dims.len()).rev() {
            digits[k] += 1;
            if digits[k] < dims[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    (inner, outer)
}

/// Traces out every subsystem not listed in `keep`.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_dims(dims, rho.dim())?;
    check_selection(keep, dims.len(), "keep")?;
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let (kept, traced) = split_indices(dims, keep);
    let n = rho.dim();
    let mut out = vec![ZERO; kept_dim * kept_dim];
    for i in 0..n {
        for j in 0..n {
            if traced[i] == traced[j] {
                out[kept[i] * kept_dim + kept[j]] += rho.get(i, j);
            }
        }
    }
    Ok(ComplexMatrix::from_raw(kept_dim, out))
}

/// Lifts `op`, acting on the subsystems `targets`, to the full space with the
/// identity on every other subsystem.
pub fn embed(op: &ComplexMatrix, dims: &[usize], targets: &[usize]) -> Result<ComplexMatrix> {
    check_selection(targets, dims.len(), "target")?;
    let target_dim: usize = targets.iter().map(|&k| dims[k]).product();
    if op.dim() != target_dim {
        return Err(Error::DimensionMismatch {
            expected: target_dim,
            found: op.dim(),
        });
    }
    check_dims(dims, dims.iter().product())?;
    if targets.len() == dims.len() {
        return Ok(op.clone());
    }
    let (local, rest) = split_indices(dims, targets);
    let n: usize = dims.iter().product();
    let mut out = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            if rest[i] == rest[j] {
                out[i * n + j] = op.get(local[i], local[j]);
            }
        }
    }
    Ok(ComplexMatrix::from_raw(n, out))
}

/// Position of every full basis index after reordering subsystems so that new
/// subsystem `k` is old subsystem `perm[k]`.
fn permuted_positions(dims: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    let mut seen = vec![false; dims.len()];
    if perm.len() != dims.len()
        || perm
            .iter()
            .any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::InvalidSubsystems(format!(
            "{perm:?} is not a permutation of {} subsystems",
            dims.len()
        )));
    }
    let total: usize = dims.iter().product();
    let mut positions = Vec::with_capacity(total);
    let mut digits = vec![0usize; dims.len()];
    for _ in 0..total {
        let idx = perm
            .iter()
            .fold(0usize, |acc, &old| acc * dims[old] + digits[old]);
        positions.push(idx);
        for k in (0..dims.len()).rev() {
            digits[k] += 1;
            if digits[k] < dims[k] {
                break;
            }
            digits[k] = 0;
        }
    }
    Ok(positions)
}

/// Reorders the tensor factors of an operator: new subsystem `k` is old
/// subsystem `perm[k]`. Returns the matrix only; the new dimension list is
/// `perm.map(|k| dims[k])`.
pub fn permute_subsystems(
    m: &ComplexMatrix,
    dims: &[usize],
    perm: &[usize],
) -> Result<ComplexMatrix> {
    check_dims(dims, m.dim())?;
    let pos = permuted_positions(dims, perm)?;
    let n = m.dim();
    let mut out = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            out[pos[i] * n + pos[j]] = m.get(i, j);
        }
    }
    Ok(ComplexMatrix::from_raw(n, out))
}

pub(crate) fn permute_vector(v: &[C64], dims: &[usize], perm: &[usize]) -> Result<Vec<C64>> {
    check_dims(dims, v.len())?;
    let pos = permuted_positions(dims, perm)?;
    let mut out = vec![ZERO; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[pos[i]] = x;
    }
    Ok(out)
}
