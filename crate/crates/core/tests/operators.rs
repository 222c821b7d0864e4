use drinfeld_core::algebra::{ConstantExtension, Field, Poly, QElem, QuotientRing, RatFunc};
use drinfeld_core::carlitz::TorsionContext;
use drinfeld_core::characters::DirichletCharacter;
use drinfeld_core::forms::{verify_eigensystem, FormSpec};
use drinfeld_core::operators::{delta_sum, hecke_u, twist_normalized, twist_raw};
use drinfeld_core::series::{shift_by_torsion, AKind, ModularMeta, UExpansion};
use drinfeld_core::Error;

fn poly(q: u32, s: &str) -> Poly {
    Poly::parse(Field::with_order(q).unwrap(), s, "t").unwrap()
}

fn setup(q: u32, m: &str) -> (ConstantExtension, TorsionContext, Poly) {
    let n = poly(q, m);
    let primes = n.factor_squarefree().unwrap();
    let ce = ConstantExtension::for_primes(q, primes.iter()).unwrap();
    let ctx = TorsionContext::new(ce, &n).unwrap();
    (ce, ctx, n)
}

fn kval(ce: ConstantExtension, a: &Poly) -> RatFunc {
    RatFunc::from_poly(ce.lift(a))
}

#[test]
fn twist_of_zero_is_zero() {
    let (ce, ctx, n) = setup(3, "t");
    let chi = DirichletCharacter::chi_zeta(ce, &n).unwrap();
    let z = UExpansion::zeros(QElem::zero(ctx.ring()), 12).with_meta(Some(ModularMeta::level_one(ce, 4, 1)));
    assert!(twist_raw(&z, &chi, &ctx).unwrap().is_zero());
}

#[test]
fn trivial_twist_is_the_scaled_delta_sum() {
    let (ce, ctx, n) = setup(3, "t");
    let triv = DirichletCharacter::chi_zeta(ce, &n).unwrap().pow(0);
    let spec = FormSpec::PetrovFs(1);
    let f = spec.build_a(ce, 2).unwrap();
    let r = f.render(27).unwrap().lift(&QuotientRing::scalars(ce));
    let t = twist_raw(&r, &triv, &ctx).unwrap();
    let mut shifts = UExpansion::zeros(QElem::zero(ctx.ring()), 27);
    for d in ctx.residues() {
        shifts = shifts.add(&shift_by_torsion(&r, &d, &ctx).unwrap());
    }
    // 𝔫^{2m-k} = θ^{-2} for f_1 at q = 3
    let scale = kval(ce, &n).powi(-2).unwrap();
    assert_eq!(t, shifts.scale_k(&scale));
    let ds = delta_sum(&f, &n).unwrap().render(27).unwrap().lift(ctx.ring());
    assert_eq!(t, ds.scale_k(&scale));
}

#[test]
fn twist_metadata() {
    let (ce, ctx, n) = setup(3, "t^2+t");
    let chi = DirichletCharacter::primitive_mod(ce, &n).unwrap().remove(0);
    let f = FormSpec::Delta.build(ce, 9).unwrap().render(9).unwrap();
    let t = twist_raw(&f, &chi, &ctx).unwrap();
    let m = t.meta().unwrap();
    assert_eq!(m.weight, 8);
    assert_eq!(m.typ, chi.sign());
    assert_eq!(m.level, n.pow(2));
    assert_eq!(m.nebentypus, chi.pow(2));
}

#[test]
fn normalization_needs_primitive_character() {
    let (ce, ctx, n) = setup(3, "t^2+t");
    let f = FormSpec::PetrovFs(1).build(ce, 9).unwrap().render(9).unwrap();
    let imprimitive = DirichletCharacter::all_mod(ce, &n).unwrap().into_iter().find(|c| !c.is_primitive() && !c.is_trivial()).unwrap();
    assert!(matches!(twist_normalized(&f, &imprimitive, &ctx), Err(Error::NotPrimitive)));
    assert!(twist_raw(&f, &imprimitive, &ctx).is_ok());
}

#[test]
fn hecke_u_eigenvalues_and_errors() {
    let ce = ConstantExtension::new(3, 1).unwrap();
    let delta = FormSpec::Delta.build(ce, 27).unwrap().render(27).unwrap();
    let qq = poly(3, "t+2");
    let t = hecke_u(&delta, &qq).unwrap();
    assert_eq!(t, delta.clone().truncate(9).scale_k(&kval(ce, &qq.pow(2))));
    // wrong eigenvalue is detected
    let f1 = FormSpec::PetrovFs(1).build(ce, 27).unwrap().render(27).unwrap();
    let t = hecke_u(&f1, &qq).unwrap();
    assert_ne!(t, f1.clone().truncate(9).scale_k(&kval(ce, &qq.pow(2))));
    assert!(matches!(hecke_u(&f1.clone().truncate(2), &qq), Err(Error::PrecisionTooSmall { .. })));
    let p = poly(3, "t");
    let ep = FormSpec::EisensteinEp(p.clone()).build(ce, 27).unwrap().render(27).unwrap();
    assert!(matches!(hecke_u(&ep, &p), Err(Error::LevelPrime(_))));
    assert!(hecke_u(&f1.clone().with_meta(None), &p).is_err());
}

#[test]
fn twisted_forms_are_eigenforms() {
    let (ce, _, n) = setup(3, "t+1");
    let chi = DirichletCharacter::chi_zeta(ce, &n).unwrap();
    let base = ConstantExtension::new(3, 1).unwrap();
    for f in [FormSpec::PetrovFs(1), FormSpec::Delta, FormSpec::EisensteinEp(poly(3, "t^2+1"))] {
        let spec = FormSpec::NormalizedTwistOf(Box::new(f), chi.clone());
        let r = verify_eigensystem(&spec, base, &poly(3, "t"), 9).unwrap();
        assert!(r.pass, "{spec}: {:?}", r.witness);
    }
}

#[test]
fn delta_sum_support() {
    let ce = ConstantExtension::new(3, 1).unwrap();
    let n = poly(3, "t");
    let f = FormSpec::PetrovFs(1).build_a(ce, 2).unwrap();
    let ds = delta_sum(&f, &n).unwrap();
    for (a, c) in ds.coeffs() {
        let expect_nonzero = n.divides(a) && a.div_exact(&n).unwrap().gcd(&n).is_one();
        assert_eq!(!c.is_zero(), expect_nonzero, "a = {a}");
    }
    // all support divisible by 𝔫
    let g = f.map_coeffs(|a, c| if n.divides(a) { c.clone() } else { RatFunc::zero(ce.ext()) });
    assert!(delta_sum(&g, &n).unwrap().coeffs().values().all(|c| c.is_zero()));
    let big = drinfeld_core::series::AExpansion::from_fn(ce, AKind::Power(4), f.meta().clone(), 1, |_| RatFunc::one(ce.ext()));
    assert!(matches!(delta_sum(&big, &n), Err(Error::Unsupported(_))));
}
