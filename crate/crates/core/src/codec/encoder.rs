use crate::analysis::map::RelaxationMap;
use crate::error::{Error, Result};

/// Reverses the low `bits` bits of `i`.
#[inline]
pub fn bit_reverse(i: usize, bits: usize) -> usize {
    if bits == 0 {
        0
    } else {
        i.reverse_bits() >> (usize::BITS as usize - bits)
    }
}

/// Returns `v` permuted by index bit-reversal (`out[i] = v[rev(i)]`).
pub fn bit_reverse_permute<T: Copy>(v: &[T]) -> Vec<T> {
    let bits = v.len().trailing_zeros() as usize;
    (0..v.len()).map(|i| v[bit_reverse(i, bits)]).collect()
}

fn check_len(len: usize, map: &RelaxationMap) -> Result<()> {
    if len != map.len() {
        return Err(Error::LengthMismatch {
            expected: map.len(),
            got: len,
        });
    }
    Ok(())
}

/// In-place butterfly of the subtree rooted at `(t, j)` over `buf`.
/// Children first, then `first ^= second`. Relaxed subtrees are left alone.
pub(crate) fn transform_natural(buf: &mut [u8], map: &RelaxationMap, t: usize, j: usize) {
    if t == map.n() || map.is_relaxed(t, j) {
        return;
    }
    let half = buf.len() / 2;
    let (a, b) = buf.split_at_mut(half);
    transform_natural(a, map, t + 1, 2 * j);
    transform_natural(b, map, t + 1, 2 * j + 1);
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x ^= y;
    }
}

/// Inverse of [`transform_natural`] on the same subtree.
pub(crate) fn untransform_natural(buf: &mut [u8], map: &RelaxationMap, t: usize, j: usize) {
    if t == map.n() || map.is_relaxed(t, j) {
        return;
    }
    let half = buf.len() / 2;
    let (a, b) = buf.split_at_mut(half);
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x ^= y;
    }
    untransform_natural(a, map, t + 1, 2 * j);
    untransform_natural(b, map, t + 1, 2 * j + 1);
}

/// Encodes without the output bit-reversal: with nothing relaxed this is
/// `u F^{(x)n}`, and a fully relaxed map gives back `u`.
pub fn encode_natural(u: &[u8], map: &RelaxationMap) -> Result<Vec<u8>> {
    check_len(u.len(), map)?;
    let mut x = u.to_vec();
    transform_natural(&mut x, map, 0, 0);
    Ok(x)
}

/// Encodes `u` under `map`. With nothing relaxed this equals `u B_N F^{(x)n}`
/// where `B_N` is the bit-reversal permutation.
pub fn encode(u: &[u8], map: &RelaxationMap) -> Result<Vec<u8>> {
    Ok(bit_reverse_permute(&encode_natural(u, map)?))
}
