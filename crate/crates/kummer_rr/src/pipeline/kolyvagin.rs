use crate::error::{Error, Result};
use crate::fparith::FpMatrix;
use crate::numfield::FieldTag;
use crate::sunitlat::{kolyvagin_operator, SUnitLattice, SUnitVec};

/// `D^order_σ = Σ_{j=0}^{p−1} C(j, order)·σ^j` as a matrix over `F_p`.
pub fn kolyvagin_matrix(order: u64, sigma: &FpMatrix) -> FpMatrix {
    kolyvagin_operator(sigma, order)
}

/// The derivative operators `E^i = D^i_{σ⁻¹}` used for the candidates.
#[derive(Debug, Clone)]
pub struct Derivatives {
    pub e1: FpMatrix,
    pub e2: FpMatrix,
}

impl Derivatives {
    pub fn new(lat: &SUnitLattice) -> Derivatives {
        let sigma_inv = lat.sigma.pow(lat.p() - 1);
        Derivatives {
            e1: kolyvagin_matrix(1, &sigma_inv),
            e2: kolyvagin_matrix(2, &sigma_inv),
        }
    }

    pub fn apply(&self, order: u64, v: &SUnitVec) -> Result<SUnitVec> {
        if v.tag != FieldTag::Big {
            return Err(Error::InvalidInput(
                "derivatives act on the big lattice".into(),
            ));
        }
        let m = match order {
            1 => &self.e1,
            2 => &self.e2,
            _ => {
                return Err(Error::InvalidInput(format!(
                    "no derivative of order {order}"
                )))
            }
        };
        Ok(SUnitVec {
            tag: FieldTag::Big,
            exps: m.mul_vec(&v.exps),
        })
    }
}

/// `a1_cand = E¹γ` and `b2_cand = −2·E²γ − E¹γ` in exponent coordinates.
pub fn candidates(lat: &SUnitLattice, gamma: &SUnitVec) -> Result<(SUnitVec, SUnitVec)> {
    let p = lat.p();
    let d = Derivatives::new(lat);
    let a1 = d.apply(1, gamma)?;
    let d2 = d.apply(2, gamma)?;
    let b2 = SUnitVec::combine(&[(-2, &d2), (-1, &a1)], p)?;
    Ok((a1, b2))
}

/// Checks the cochain identities `(σ−1)·a1_cand = c` and
/// `(σ−1)·b2_cand = −2·a1_cand − c` inside the big lattice.
pub fn heisenberg_identities(
    lat: &SUnitLattice,
    c: &SUnitVec,
    a1_cand: &SUnitVec,
    b2_cand: &SUnitVec,
) -> Result<bool> {
    let p = lat.p();
    let n = lat.dim(FieldTag::Big);
    let s1 = lat.sigma.sub(&FpMatrix::identity(p, n));
    let c_big = lat.include(c)?;
    let lhs_a = s1.mul_vec(&a1_cand.exps);
    let lhs_b = s1.mul_vec(&b2_cand.exps);
    let rhs_b = SUnitVec::combine(&[(-2, a1_cand), (-1, &c_big)], p)?;
    Ok(lhs_a == c_big.exps && lhs_b == rhs_b.exps)
}
