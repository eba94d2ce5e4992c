//! Eigen-equations of the Dunkl-type operators and the operator matrix in the P_n basis.

use minus_one::families::{eigen_system, FamilyId, Params};
use minus_one::numerics::PrecisionContext;
use minus_one::operators::{matrix_diagonality, operator_matrix, verify_eigen};

fn main() -> minus_one::error::Result<()> {
    let ctx = PrecisionContext::default();
    let p = Params::real(FamilyId::GeneralizedSymmetricBannaiIto, &[1.0, 1.0, 1.0], &ctx)?;
    for sigma in ["0.5", "2"] {
        let s = ctx.parse_cnum(sigma)?;
        let sys = eigen_system(&p, Some(&s), &ctx)?;
        for n in 0..=5 {
            let r = verify_eigen(&p, n, Some(&s), &ctx)?;
            println!("sigma={sigma} n={n} lambda={} residual {:.2e} {:?}", sys.eigenvalue(n, &ctx), r.residual, r.status);
        }
        let m = operator_matrix(&p, 8, Some(&s), &ctx)?;
        let l: Vec<_> = (0..=8).map(|n| sys.eigenvalue(n, &ctx)).collect();
        let (off, diag) = matrix_diagonality(&m, &l, &ctx);
        println!("sigma={sigma} N=8 matrix: off {off:.2e} diag {diag:.2e}");
    }
    Ok(())
}
