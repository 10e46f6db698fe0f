use dynzeta::cohomop::{lzeta_closed, transfer_matrix, zeta_closed, RationalFunctionT};
use dynzeta::dynmap::{ProjPoint, RationalMap};
use dynzeta::exact::{Field, PolyQ, Rat};
use dynzeta::series::crosscheck_with_table;
use dynzeta::spectra::{check_transversal_levels, SpectrumTable};
use dynzeta::Error;

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn family(l0: Rat, linf: Rat) -> RationalMap {
    RationalMap::new(
        PolyQ::new(vec![Rat::zero(), l0, Rat::one()]),
        PolyQ::new(vec![Rat::one(), linf]),
    )
    .unwrap()
}

fn poly(c: &[i64]) -> RationalMap {
    RationalMap::polynomial(PolyQ::from_ints(c)).unwrap()
}

fn rf(num: PolyQ, den: PolyQ) -> RationalFunctionT {
    RationalFunctionT::new(num, den).unwrap()
}

/// `1 − a t`
fn lin(a: Rat) -> PolyQ {
    PolyQ::new(vec![Rat::one(), -a])
}

fn corpus() -> Vec<(&'static str, RationalMap)> {
    vec![
        ("z^2", RationalMap::power(2)),
        ("z^3", RationalMap::power(3)),
        ("z^2 - 2", poly(&[-2, 0, 1])),
        ("z^2 + 1", poly(&[1, 0, 1])),
        ("family(1/2, 1/3)", family(q(1, 2), q(1, 3))),
        ("family(1/3, -1/2)", family(q(1, 3), q(-1, 2))),
    ]
}

#[test]
fn power_map_closed_forms() {
    for d in 2..=4usize {
        let phi = RationalMap::power(d);
        // at m = 0 the points with multiplier 0 still count once, so the
        // power law gives way to 1/((1 − t)(1 − dt))
        for m in 1..=3u32 {
            let dm = Rat::from(d).pow(m);
            let expected = rf(lin(dm.clone()), lin(&dm * &Rat::from(d)));
            assert_eq!(zeta_closed(&phi, m as usize).unwrap(), expected, "d={d} m={m}");
        }
        let hinkkanen = rf(PolyQ::one(), &lin(Rat::one()) * &lin(Rat::from(d)));
        assert_eq!(zeta_closed(&phi, 0).unwrap(), hinkkanen);
    }
}

#[test]
fn chebyshev_closed_forms() {
    let cheb = poly(&[-2, 0, 1]);
    assert_eq!(zeta_closed(&cheb, 1).unwrap(), rf(lin(Rat::from(2)), lin(Rat::from(4))));
    assert_eq!(
        zeta_closed(&cheb, 2).unwrap(),
        rf(lin(Rat::from(4)), &lin(Rat::from(16)) * &lin(Rat::from(8)))
    );
}

#[test]
fn family_closed_form() {
    let (l0, linf) = (q(1, 2), q(1, 3));
    let phi = family(l0.clone(), linf.clone());
    let alpha = (Rat::one() - &l0) / (Rat::one() - &linf);
    assert_eq!(alpha, q(3, 4));
    let la = phi.multiplier(&ProjPoint::Finite(alpha)).unwrap();
    let remark = (Rat::from(2) - &l0 - &linf) / (Rat::one() - &l0 * &linf);
    assert_eq!(la, remark);
    assert_eq!(phi.multiplier(&ProjPoint::Finite(Rat::zero())).unwrap(), l0);
    assert_eq!(phi.multiplier(&ProjPoint::Infinity).unwrap(), linf);
    let sigma1 = &(&l0 + &linf) + &la;
    assert_eq!(sigma1, q(67, 30));
    let expected = rf(lin(Rat::from(2)), lin(Rat::from(2) + sigma1));
    assert_eq!(zeta_closed(&phi, 1).unwrap(), expected);
}

#[test]
fn series_matches_closed_form_on_corpus() {
    for (name, phi) in corpus() {
        let order = if phi.degree() == 3 { 5 } else { 6 };
        let table = match SpectrumTable::build(&phi, order, 3) {
            Ok(t) => t,
            Err(Error::NotTransversal { level }) => panic!("{name} not transversal at level {level}"),
            Err(e) => panic!("{name}: {e}"),
        };
        for m in 0..=3 {
            let r = crosscheck_with_table(&table, m, order).unwrap();
            assert!(r.passed(), "{name} m={m}: {:?}", r.first_mismatch);
        }
    }
}

#[test]
fn trace_identity_on_corpus() {
    for (name, phi) in corpus() {
        let table = SpectrumTable::build(&phi, 4, 2).unwrap();
        for m in 1..=3 {
            let mat = transfer_matrix(&phi, m).unwrap();
            let mut power = mat.entries().clone();
            for n in 1..=4 {
                assert_eq!(power.trace(), -table.t(n, m).unwrap(), "{name} m={m} n={n}");
                power = power.mul(mat.entries());
            }
        }
    }
}

#[test]
fn composition_law_on_corpus() {
    for (name, phi) in corpus() {
        let iterates = phi.iterates(3).unwrap();
        for m in 1..=3 {
            let base = transfer_matrix(&phi, m).unwrap();
            for (i, phi_n) in iterates.iter().enumerate() {
                let n = (i + 1) as u32;
                let lhs = transfer_matrix(phi_n, m).unwrap();
                assert_eq!(lhs.entries(), &base.entries().pow(n), "{name} m={m} n={n}");
            }
        }
    }
}

#[test]
fn transversality_detection() {
    for phi in [
        poly(&[0, 1, 1]),
        RationalMap::polynomial(PolyQ::new(vec![q(1, 4), Rat::zero(), Rat::one()])).unwrap(),
    ] {
        let r = check_transversal_levels(&phi, 1).unwrap();
        assert_eq!(r.first_failure(), Some(1));
    }
    let r = check_transversal_levels(&family(q(1, 2), q(1, 3)), 6).unwrap();
    assert!(r.all_transversal());
    assert_eq!(r.levels.len(), 6);
}

#[test]
fn lzeta_orientation() {
    let z2 = RationalMap::power(2);
    assert_eq!(lzeta_closed(&z2, 1).unwrap(), rf(lin(Rat::from(2)), PolyQ::one()));
    assert_eq!(lzeta_closed(&z2, 2).unwrap(), rf(lin(Rat::from(4)), PolyQ::one()));
    assert_eq!(lzeta_closed(&z2, 0).unwrap(), rf(PolyQ::one(), lin(Rat::one())));
}
