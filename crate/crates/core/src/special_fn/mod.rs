//! Elliptic-function numerics used by the parametrization shells.

mod jacobi;
mod weierstrass;

pub use jacobi::{
    biquadratic_params, biquadratic_params_from, complete_k, jacobi_sn, jacobi_sncndn, sample_phis, BiquadParams,
};
pub use weierstrass::{fermat_pair, lattice, weierstrass_p, Lattice};
