//! A single-output circuit computing the entries of `L*R xor S` over F2.
//!
//! Inputs are the row index then the column index, each `ceil(log2 n)` bits
//! MSB first, so for power-of-two sides the circuit's truth table is the
//! row-major flattening of the matrix. Built from one synthesized circuit
//! per column of L and per row of R, a synthesized circuit for the sparse
//! part, an inner-product gadget and a final two-bit parity.

use crate::bits::Bits;
use crate::circuit::{
    inner_product_gadget, synthesize, table_inputs, Circuit, CircuitBuilder, Ref,
};
use crate::error::{Error, Result};

/// The compiled circuit plus its size accounting; the parts always sum to
/// the total.
#[derive(Clone, Debug)]
pub struct NonrigidBuild {
    pub circuit: Circuit,
    pub size_left: usize,
    pub size_right: usize,
    pub size_sparse: usize,
    pub size_glue: usize,
}

/// Compiles the decomposition `(L, R, sparse)` of an `n x n` matrix over F2.
/// `l` has `n` rows of `r` bits, `right` has `r` rows of `n` bits, and
/// `sparse` lists the positions where the product is flipped.
pub fn nonrigid_circuit(
    l: &[Bits],
    right: &[Bits],
    sparse: &[(usize, usize)],
    n: usize,
) -> Result<NonrigidBuild> {
    let r = right.len();
    if l.len() != n || l.iter().any(|row| row.len() != r) {
        return Err(Error::Infeasible {
            what: "decomposition circuit",
            detail: format!("left factor must be {n} rows of {r} bits"),
        });
    }
    if right.iter().any(|row| row.len() != n) {
        return Err(Error::Infeasible {
            what: "decomposition circuit",
            detail: format!("right factor rows must have {n} bits"),
        });
    }
    if sparse.iter().any(|&(i, j)| i >= n || j >= n) {
        return Err(Error::Infeasible {
            what: "decomposition circuit",
            detail: "sparse positions must lie inside the matrix".into(),
        });
    }
    let idx_bits = table_inputs(n);
    let full = 1usize << idx_bits;
    let mut b = CircuitBuilder::new(2 * idx_bits);
    let i_wires: Vec<Ref> = (0..idx_bits).map(Ref::Input).collect();
    let j_wires: Vec<Ref> = (idx_bits..2 * idx_bits).map(Ref::Input).collect();

    // row_i(L): one synthesized circuit per column of L, fed with i
    let mut size_left = 0;
    let mut left_bits = Vec::with_capacity(r);
    for t in 0..r {
        let table = Bits::from_fn(full, |i| i < n && l[i].get(t));
        let sub = synthesize(&table);
        size_left += sub.size();
        left_bits.push(b.splice(&sub, &i_wires)[0]);
    }
    // col_j(R): one synthesized circuit per row of R, fed with j
    let mut size_right = 0;
    let mut right_bits = Vec::with_capacity(r);
    for t in 0..r {
        let table = Bits::from_fn(full, |j| j < n && right[t].get(j));
        let sub = synthesize(&table);
        size_right += sub.size();
        right_bits.push(b.splice(&sub, &j_wires)[0]);
    }
    // the sparse correction as one synthesized table over (i, j)
    let mut sparse_table = Bits::zeros(full * full);
    for &(i, j) in sparse {
        sparse_table.set(i * full + j, true);
    }
    let sparse_sub = synthesize(&sparse_table);
    let size_sparse = sparse_sub.size();
    let all_wires: Vec<Ref> = i_wires.iter().chain(j_wires.iter()).copied().collect();
    let sparse_bit = b.splice(&sparse_sub, &all_wires)[0];

    let before_glue = b.size();
    let ip = inner_product_gadget(r);
    let mut ip_in = left_bits;
    ip_in.extend(right_bits);
    let dot = b.splice(&ip, &ip_in)[0];
    let out = b.xor(dot, sparse_bit);
    let size_glue = b.size() - before_glue;

    Ok(NonrigidBuild {
        circuit: b.finish(vec![out]),
        size_left,
        size_right,
        size_sparse,
        size_glue,
    })
}
