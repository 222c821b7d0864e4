use drinfeld_core::algebra::{ConstantExtension, Field, Poly, RatFunc};
use drinfeld_core::carlitz::TorsionContext;
use drinfeld_core::characters::DirichletCharacter;
use drinfeld_core::forms::{
    chi_p_s, congruence_check, eis_constant_term, local_factor_table, verify_eigensystem, CongruenceKind, FormSpec,
};
use drinfeld_core::Error;

fn poly(q: u32, s: &str) -> Poly {
    Poly::parse(Field::with_order(q).unwrap(), s, "t").unwrap()
}

fn ce_for(q: u32, p: &Poly) -> ConstantExtension {
    ConstantExtension::for_primes(q, p.factor_squarefree().unwrap().iter()).unwrap()
}

#[test]
fn sign_obstruction_is_exact() {
    let p = poly(3, "t^2+1");
    let ce = ce_for(3, &p);
    for chi in DirichletCharacter::all_mod(ce, &p).unwrap() {
        for k in 1..=4usize {
            let ok = (chi.sign() + k as u64) % 2 == 0;
            let built = FormSpec::TwistedEis { chi: chi.clone(), k }.build(ce, 9);
            assert_eq!(built.is_ok(), ok, "{chi} k={k}");
            if !ok {
                assert!(matches!(built, Err(Error::SignMismatch { .. })));
            }
        }
    }
}

#[test]
fn constant_term_at_theta() {
    let p = poly(3, "t");
    let ce = ce_for(3, &p);
    let ctx = TorsionContext::new(ce, &p).unwrap();
    let chi = DirichletCharacter::chi_zeta(ce, &p).unwrap();
    let c = eis_constant_term(&chi, 1, &ctx).unwrap();
    let theta = RatFunc::from_poly(ce.lift(&p));
    assert_eq!(c, ctx.lambda().scale(&theta.inv().unwrap()));
    assert!(matches!(eis_constant_term(&chi, 2, &ctx), Err(Error::SignMismatch { .. })));
}

/// The congruence fails for a character other than `χ_{𝔭,s}`, so the check
/// is not vacuous.
#[test]
fn congruence_detects_wrong_character() {
    let p = poly(3, "t^2+1");
    let ce = ce_for(3, &p);
    let zeta = ce.root_of(&p).unwrap();
    let good = chi_p_s(ce, &p, 1).unwrap();
    let bad = good.mul(&DirichletCharacter::chi_zeta(ce, &p).unwrap().pow(2)).unwrap();
    let n = 12;
    let fs = FormSpec::PetrovFs(1).build(ce, n).unwrap().render(n).unwrap();
    let divisible = |chi: &DirichletCharacter| {
        let e = FormSpec::FrickeEis { chi: chi.clone(), k: 1 }.build(ce, n).unwrap().render(n).unwrap();
        (0..n).all(|i| {
            let d = e.coeff(i).sub(fs.coeff(i));
            let x = d.as_scalar().unwrap();
            x.is_poly() && x.num().eval(zeta).is_zero()
        })
    };
    assert!(divisible(&good));
    assert!(!divisible(&bad));
    assert!(congruence_check(CongruenceKind::SF, &p, 1, n).unwrap().pass);
}

#[test]
fn reports_serialize() {
    let ce = ConstantExtension::new(3, 1).unwrap();
    let r = verify_eigensystem(&FormSpec::PetrovFs(1), ce, &poly(3, "t"), 27).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    for key in ["identity", "params", "precision", "pass", "witness"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(serde_json::to_string(&r).unwrap(), serde_json::to_string(&verify_eigensystem(&FormSpec::PetrovFs(1), ce, &poly(3, "t"), 27).unwrap()).unwrap());
}

#[test]
fn local_factors_of_f1() {
    let ce = ConstantExtension::new(3, 1).unwrap();
    let table = local_factor_table(&FormSpec::PetrovFs(1), ce, 2, 27).unwrap();
    // three primes of degree 1 and three of degree 2
    assert_eq!(table.len(), 6);
    for (qq, lam, rep) in table {
        assert!(rep.pass);
        assert_eq!(lam, RatFunc::from_poly(ce.lift(&qq)));
    }
}
