use dynzeta::cohomop::{transfer_matrix, RationalFunctionT};
use dynzeta::dynmap::{Mobius, ProjPoint, RationalMap};
use dynzeta::exact::{Field, MatF, PolyQ, QuotAlg, Rat};
use dynzeta::series::{expand_closed, series_exp, SeriesQ};
use dynzeta::spectra::SpectrumTable;
use dynzeta::Error;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| !r.is_zero())
}

fn poly(max_deg: usize) -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(small_rat(), 1..=max_deg + 1).prop_map(PolyQ::new)
}

fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = PolyQ> {
    poly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Möbius maps with integer entries of absolute value at most 5.
fn mobius() -> impl Strategy<Value = Mobius> {
    prop::array::uniform4(-5i64..=5).prop_filter_map("singular", |[a, b, c, d]| {
        Mobius::new(a.into(), b.into(), c.into(), d.into()).ok()
    })
}

/// `(z² + a z) / (b z + 1)`: fixes 0 and ∞ with multipliers `a` and `b`.
fn family_map() -> impl Strategy<Value = (Rat, Rat, RationalMap)> {
    (small_rat(), small_rat()).prop_filter_map("degenerate", |(a, b)| {
        let phi = RationalMap::new(
            PolyQ::new(vec![Rat::zero(), a.clone(), Rat::one()]),
            PolyQ::new(vec![Rat::one(), b.clone()]),
        )
        .ok()?;
        (phi.degree() == 2).then_some((a, b, phi))
    })
}

fn quadratic_map() -> impl Strategy<Value = RationalMap> {
    (poly(2), poly(2)).prop_filter_map("not of degree 2", |(f, g)| {
        RationalMap::new(f, g).ok().filter(|phi| phi.degree() == 2)
    })
}

fn distinct_roots(max: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::btree_set((-8i64..=8, 1i64..=3).prop_map(|(n, d)| Rat::new(n, d)), 1..=max)
        .prop_map(|s| s.into_iter().collect())
}

fn from_roots(roots: &[Rat]) -> PolyQ {
    roots
        .iter()
        .fold(PolyQ::one(), |acc, r| &acc * &PolyQ::new(vec![-r, Rat::one()]))
}

fn mat(dim: usize) -> impl Strategy<Value = MatF<Rat>> {
    prop::collection::vec(prop::collection::vec(small_rat(), dim), dim).prop_map(|rows| MatF::from_rows(rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(c in nonzero_poly(2), x in nonzero_poly(3), y in nonzero_poly(3)) {
        let a = &c * &x;
        let b = &c * &y;
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert!(c.divides(&g));
        prop_assert!(g.leading().unwrap().is_one());
        let (ca, cb) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
        prop_assert!(ca.gcd(&cb).is_one());
    }

    #[test]
    fn invert_mod_round_trip(a in nonzero_poly(4), p in nonzero_poly(4)) {
        prop_assume!(!p.is_constant());
        match a.invert_mod(&p) {
            Ok(inv) => {
                prop_assert!(inv.degree_or_zero() < p.degree().unwrap());
                prop_assert!((&a * &inv).rem(&p).unwrap().is_one());
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NotInvertible);
                prop_assert!(!a.gcd(&p).is_one());
            }
        }
    }

    #[test]
    fn trace_is_linear(p in nonzero_poly(5), h1 in poly(6), h2 in poly(6), c in small_rat()) {
        prop_assume!(!p.is_constant());
        let alg = QuotAlg::new(&p).unwrap();
        let lhs = alg.trace(&(&h1.scale(&c) + &h2));
        prop_assert_eq!(lhs, &c * &alg.trace(&h1) + alg.trace(&h2));
        prop_assert_eq!(alg.trace(&PolyQ::one()), Rat::from(p.degree().unwrap()));
    }

    #[test]
    fn trace_on_split_moduli(roots in distinct_roots(6), h in poly(7)) {
        let p = from_roots(&roots);
        let alg = QuotAlg::new(&p).unwrap();
        let direct = roots.iter().fold(Rat::zero(), |acc, r| acc + h.eval(r));
        let reduced = alg.reduce(&h);
        prop_assert_eq!(alg.trace(&reduced), direct.clone());
        prop_assert_eq!(alg.trace_by_matrix(&reduced), direct);
    }

    #[test]
    fn charpoly_log_derivative(k in 0usize..=4, seed in prop::collection::vec(small_rat(), 16)) {
        let m = MatF::from_rows((0..k).map(|i| seed[i * 4..i * 4 + k].to_vec()).collect()).unwrap();
        let order = k + 3;
        let p = m.charpoly_det();
        prop_assert!(p.coeff(0).is_one());
        // −P′ = P · Σ tr(Mⁿ) t^{n−1}
        let mut traces = Vec::with_capacity(order);
        let mut power = m.clone();
        for _ in 0..order {
            traces.push(power.trace());
            power = power.mul(&m);
        }
        let ps = SeriesQ::new((0..order).map(|i| p.coeff(i)).collect());
        let rhs = ps.mul(&SeriesQ::new(traces));
        for i in 0..order {
            let lhs = -(p.coeff(i + 1) * Rat::from(i + 1));
            prop_assert_eq!(&lhs, rhs.coeff(i));
        }
    }

    #[test]
    fn charpoly_matches_two_by_two(m in mat(2)) {
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let expected = PolyQ::new(vec![Rat::one(), -(a + d), a * d - b * c]);
        prop_assert_eq!(m.charpoly_det(), expected);
    }

    #[test]
    fn exp_of_log_matches_closed_form(factors in prop::collection::vec((small_rat(), prop::bool::ANY), 1..=4)) {
        let order = 6;
        let mut num = PolyQ::one();
        let mut den = PolyQ::one();
        let mut log = vec![Rat::zero(); order + 1];
        for (a, up) in &factors {
            let f = PolyQ::new(vec![Rat::one(), -a]);
            // log(1 − a t) = −Σ aⁿ tⁿ / n
            let sign = if *up { Rat::from(-1) } else { Rat::one() };
            for (n, slot) in log.iter_mut().enumerate().skip(1) {
                *slot += &(&sign * &a.pow(n as u32) / Rat::from(n));
            }
            if *up { num = &num * &f } else { den = &den * &f }
        }
        let r = RationalFunctionT::new(num, den).unwrap();
        prop_assert_eq!(series_exp(&SeriesQ::new(log)).unwrap(), expand_closed(&r, order).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplier_is_conjugation_invariant((a, b, phi) in family_map(), theta in mobius()) {
        let psi = phi.conjugate(&theta).unwrap();
        prop_assert_eq!(psi.degree(), 2);
        let mut fixed = vec![(ProjPoint::Finite(Rat::zero()), a.clone()), (ProjPoint::Infinity, b.clone())];
        if !b.is_one() {
            let alpha = (Rat::one() - &a) / (Rat::one() - &b);
            let la = phi.multiplier(&ProjPoint::Finite(alpha.clone())).unwrap();
            fixed.push((ProjPoint::Finite(alpha), la));
        }
        for (x, lambda) in fixed {
            prop_assert_eq!(phi.multiplier(&x).unwrap(), lambda.clone());
            let y = theta.apply(&x);
            prop_assert_eq!(psi.eval(&y), y.clone());
            prop_assert_eq!(psi.multiplier(&y).unwrap(), lambda);
        }
    }

    #[test]
    fn chain_rule_on_iterates((a, b, phi) in family_map()) {
        let its = phi.iterates(3).unwrap();
        for (i, phi_n) in its.iter().enumerate() {
            let n = (i + 1) as u32;
            prop_assert_eq!(phi_n.degree(), 2usize.pow(n));
            prop_assert_eq!(phi_n.multiplier(&ProjPoint::Finite(Rat::zero())).unwrap(), a.pow(n));
            prop_assert_eq!(phi_n.multiplier(&ProjPoint::Infinity).unwrap(), b.pow(n));
        }
    }

    #[test]
    fn iterate_composition(phi in quadratic_map(), i in 1usize..=2, j in 1usize..=2) {
        let lhs = phi.iterate(i + j).unwrap();
        let rhs = phi.iterate(i).unwrap().compose(&phi.iterate(j).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiple_fixed_root_iff_parabolic(r in small_rat(), lambda in small_rat(), c in nonzero_rat()) {
        // φ(z) = r + λ(z − r) + c(z − r)²
        let u = PolyQ::new(vec![-&r, Rat::one()]);
        let f = &(&PolyQ::constant(r.clone()) + &u.scale(&lambda)) + &(&u * &u).scale(&c);
        let phi = RationalMap::polynomial(f).unwrap();
        prop_assert_eq!(phi.multiplier(&ProjPoint::Finite(r.clone())).unwrap(), lambda.clone());
        let p = phi.fixed_point_poly();
        prop_assert!(p.eval(&r).is_zero());
        prop_assert_eq!(p.is_squarefree().unwrap(), !lambda.is_one());
    }

    #[test]
    fn spectra_are_conjugation_invariant(phi in quadratic_map(), theta in mobius()) {
        let base = match SpectrumTable::build(&phi, 3, 2) {
            Err(Error::NotTransversal { .. }) => return Ok(()),
            r => r.unwrap(),
        };
        let moved = SpectrumTable::build_in_chart(&phi, &theta, 3, 2).unwrap();
        prop_assert!(base.s_entries().eq(moved.s_entries()));
        prop_assert!(base.t_entries().eq(moved.t_entries()));
        let psi = phi.conjugate(&theta).unwrap();
        for m in 1..=2 {
            prop_assert_eq!(
                transfer_matrix(&phi, m).unwrap().det_one_minus_t(),
                transfer_matrix(&psi, m).unwrap().det_one_minus_t()
            );
        }
    }

    #[test]
    fn table_identities(phi in quadratic_map()) {
        let table = match SpectrumTable::build(&phi, 3, 3) {
            Err(Error::NotTransversal { .. }) => return Ok(()),
            r => r.unwrap(),
        };
        for n in 1..=3usize {
            prop_assert!(table.t(n, 0).unwrap().is_one());
            prop_assert_eq!(table.s(n, 0).unwrap(), &Rat::from(2usize.pow(n as u32) + 1));
            for m in 0..=3 {
                prop_assert_eq!(table.s(n, m).unwrap(), &(table.t(n, m).unwrap() - table.t(n, m + 1).unwrap()));
            }
        }
    }

    #[test]
    fn transfer_operator_laws(phi in quadratic_map()) {
        prop_assert_eq!(transfer_matrix(&phi, 1).unwrap().entries().trace(), Rat::from(2));
        let table = SpectrumTable::build(&phi, 2, 1);
        let phi2 = phi.iterate(2).unwrap();
        for m in 1..=2 {
            let base = transfer_matrix(&phi, m).unwrap();
            prop_assert_eq!(base.dim(), 2 * m - 1);
            let sq = base.entries().pow(2);
            let composed = transfer_matrix(&phi2, m).unwrap();
            prop_assert_eq!(composed.entries(), &sq);
            if let Ok(table) = &table {
                prop_assert_eq!(base.entries().trace(), -table.t(1, m).unwrap());
                prop_assert_eq!(sq.trace(), -table.t(2, m).unwrap());
            }
        }
    }
}

#[test]
fn power_map_sums() {
    for d in 2..=3usize {
        let table = SpectrumTable::build(&RationalMap::power(d), 3, 3).unwrap();
        for n in 1..=3u32 {
            for m in 0..=3u32 {
                let dn = Rat::from(d).pow(n);
                let expected = if m == 0 {
                    &dn + &Rat::one()
                } else {
                    dn.pow(m + 1) - dn.pow(m)
                };
                assert_eq!(table.s(n as usize, m as usize).unwrap(), &expected);
            }
        }
    }
}
