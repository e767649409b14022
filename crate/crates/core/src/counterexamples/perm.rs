use fixedbitset::FixedBitSet;

use super::axial::{gen_a, Axis, AxialSet, Grid};
use crate::algebra::PartialAlgebra;
use crate::error::{Error, Result};
use crate::repsearch::SetRepresentation;

/// Largest `n` accepted by [`perm_representation`] by default.
pub const DEFAULT_PERM_CAP: usize = 6;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Parses an element id of `A(n, n)` back into its representative axial set.
fn axial_from_id(id: &str) -> Option<AxialSet> {
    if id == "E" {
        return Some(AxialSet::EMPTY);
    }
    let axis = match id.as_bytes().first()? {
        b'V' => Axis::Vertical,
        b'H' => Axis::Horizontal,
        _ => return None,
    };
    let open = id.find('[')?;
    let line = id[1..open].parse().ok()?;
    let inner = id[open + 1..].strip_suffix(']')?;
    let mut cross = 0u64;
    for k in inner.split(',') {
        cross |= 1 << k.parse::<u32>().ok()?;
    }
    Some(AxialSet { axis, line, cross })
}

/// The representation of `A(n, n)` over all permutations `σ` of `n`:
/// `({i} × J)^θ = {σ : σ(i) ∈ J}` and `(I × {j})^θ = {σ : σ⁻¹(j) ∈ I}`.
pub fn perm_representation(n: usize) -> Result<(PartialAlgebra, SetRepresentation)> {
    perm_representation_capped(n, DEFAULT_PERM_CAP)
}

pub fn perm_representation_capped(n: usize, cap: usize) -> Result<(PartialAlgebra, SetRepresentation)> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "permutation degree (base is n!; raise the cap to go further)",
            size: n,
            cap,
        });
    }
    Grid::new(n, n)?;
    let alg = gen_a(n, n)?;
    let perms = permutations(n);
    let base = perms
        .iter()
        .map(|p| format!("s{}", p.iter().map(|d| d.to_string()).collect::<String>()))
        .collect();
    let mut images = Vec::with_capacity(alg.len());
    for e in alg.elements() {
        let set = axial_from_id(alg.name(e))
            .ok_or_else(|| Error::precondition(format!("unexpected element id {}", alg.name(e))))?;
        let mut img = FixedBitSet::with_capacity(perms.len());
        for (k, p) in perms.iter().enumerate() {
            let hit = match set.axis {
                _ if set.is_empty() => false,
                Axis::Vertical => set.cross >> p[set.line] & 1 == 1,
                Axis::Horizontal => {
                    let pre = p.iter().position(|&v| v == set.line).expect("bijection");
                    set.cross >> pre & 1 == 1
                }
            };
            img.set(k, hit);
        }
        images.push(img);
    }
    Ok((alg, SetRepresentation::new(base, images)))
}
