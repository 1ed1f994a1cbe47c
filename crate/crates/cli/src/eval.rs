//! Evaluation of expressions to super fields on the chart.

use num_bigint::BigInt;
use num_rational::BigRational;
use supercurve::curve::Curve;
use supercurve::scalars::{QSeries, Scalar};
use supercurve::superfield::SuperField;

use crate::error::Result;
use crate::expr::{BinOp, Expr, Ident, Op};

fn inverse(curve: &Curve, f: &SuperField) -> Result<SuperField> {
    Ok(f.inv_to(Some(curve.config().nz))?)
}

pub fn ident_value(curve: &Curve, i: Ident) -> SuperField {
    let nq = curve.config().nq;
    match i {
        Ident::X => curve.x.clone(),
        Ident::Y => curve.y.clone(),
        Ident::Psi => curve.psi.clone(),
        Ident::R => curve.r.clone(),
        Ident::DR => curve.r.D(),
        Ident::Psi1 => curve.psi1.clone(),
        Ident::Psi2 => curve.psi2.clone(),
        Ident::E2 => curve.e2(),
        Ident::E4 => curve.e4(),
        Ident::E6 => curve.e6(),
        Ident::Theta => SuperField::theta(),
        Ident::Phi => SuperField::phi(),
        Ident::PhiTilde => curve.phi_tilde.clone(),
        Ident::Lambda => SuperField::constant(QSeries::lambda(1)),
        Ident::Q => {
            let one = BigRational::from_integer(BigInt::from(1));
            let zero = BigRational::from_integer(BigInt::from(0));
            SuperField::constant(QSeries::from_rationals(0, &[zero, one], Some(nq)))
        }
    }
}

pub fn evaluate(curve: &Curve, e: &Expr) -> Result<SuperField> {
    Ok(match e {
        Expr::Num(n) => SuperField::scalar(&Scalar::rational(BigRational::from_integer(n.clone()))),
        Expr::Ident(i) => ident_value(curve, *i),
        Expr::Neg(a) => -&evaluate(curve, a)?,
        Expr::Bin(op, a, b) => {
            let (a, b) = (evaluate(curve, a)?, evaluate(curve, b)?);
            match op {
                BinOp::Add => &a + &b,
                BinOp::Sub => &a - &b,
                BinOp::Mul => &a * &b,
                BinOp::Div => &a * &inverse(curve, &b)?,
            }
        }
        Expr::Pow(a, n) => {
            let a = evaluate(curve, a)?;
            let base = if *n < 0 { inverse(curve, &a)? } else { a };
            base.pow(n.unsigned_abs() as u32)
        }
        Expr::Apply(op, a) => {
            let a = evaluate(curve, a)?;
            match op {
                Op::D => a.D(),
                Op::Dt => curve.tilde_d(&a),
                Op::Dz => a.d_z(),
                Op::Dtau => a.d_tau(),
                Op::Dphi => a.d_phi(),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use supercurve::superfield::Mono;
    use supercurve::Config;

    fn curve() -> Curve {
        Curve::new(Config { nz: 8, nq: 4, depth: 6 })
    }

    #[test]
    fn d_psi1_relation_evaluates_to_zero() {
        let c = curve();
        let f = evaluate(&c, &parse("D(Psi1) - 1 - phi*Psi2").unwrap()).unwrap();
        assert!(f.check_zero().holds());
    }

    #[test]
    fn cube_of_x_leads_with_lambda_minus_twelve() {
        let c = curve();
        let f = evaluate(&c, &parse("x^3").unwrap()).unwrap();
        assert_eq!(f.valuation(), Some(-6));
        assert!(f.component(-6, Mono::One).check_eq(&QSeries::lambda(-12)).holds());
    }

    #[test]
    fn division_and_negative_powers_agree() {
        let c = curve();
        let a = evaluate(&c, &parse("1/x").unwrap()).unwrap();
        let b = evaluate(&c, &parse("x^-1").unwrap()).unwrap();
        assert!(a.check_eq(&b).holds());
    }
}
