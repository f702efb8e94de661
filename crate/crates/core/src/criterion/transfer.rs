use super::certificate::{verify_coords, Certificate, Origin};
use super::decomposition::ChainDecomposition;
use crate::error::{structural, Error, Result};
use crate::matrix::MatrixElement;
use crate::subspace::Subspace;
use crate::tolerances::TAU_STRUCT;

fn map_into(x: &MatrixElement, target: &ChainDecomposition, coords: Option<&[usize]>) -> Result<MatrixElement> {
    let p = target.p();
    match coords {
        Some(c) => x.promote(p.field())?.embed_block(p.ambient_dim(), c),
        None => Ok(x.clone()),
    }
}

fn check_inside(part: &Subspace, name: &str, target: &Subspace, sup: &ChainDecomposition, coords: Option<&[usize]>) -> Result<()> {
    for b in part.basis() {
        let v = map_into(b, sup, coords)?;
        if !target.same_ambient(&v) {
            return Err(structural("sub-chain does not embed into the super-chain's matrix space"));
        }
        let r = target.residual_norm(&v)?;
        if r > TAU_STRUCT {
            return Err(structural(format!("{name}' is not contained in {name} (residual {r:.2e})")));
        }
    }
    Ok(())
}

/// Moves a certificate from a sub-chain with `p' ⊆ p` and `m' ⊆ m` to the
/// super-chain. `coords` places the sub-chain's matrices on the given rows
/// and columns of the larger matrix space; `None` means the same space.
pub fn transfer_certificate(
    sub: &ChainDecomposition,
    sup: &ChainDecomposition,
    cert: &Certificate,
    coords: Option<&[usize]>,
) -> Result<Certificate> {
    check_inside(sub.p(), "p", sup.p(), sup, coords)?;
    check_inside(sub.m(), "m", sup.m(), sup, coords)?;
    verify_coords(sub, &cert.x, &cert.y, cert.tolerances)
        .map_err(|r| Error::Construction(format!("certificate does not verify on the sub-chain: {r}")))?;
    let x = sup.p_coords(&map_into(&cert.x_matrix, sup, coords)?)?;
    let y = sup.p_coords(&map_into(&cert.y_matrix, sup, coords)?)?;
    verify_coords(sup, &x, &y, cert.tolerances)
        .map(|c| c.with_provenance(Origin::Transferred, cert.seed))
        .map_err(|r| Error::Construction(format!("transferred pair rejected: {r}")))
}
