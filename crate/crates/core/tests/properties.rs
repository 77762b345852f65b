use num_traits::{One, Zero};
use proptest::prelude::*;

use parakahler_core::chevalley::chevalley_constants;
use parakahler_core::gradation::{grade_from_crossing, CrossingSet};
use parakahler_core::koszul;
use parakahler_core::paracomplex::{ChartPotential, Monomial, ParaComplex};
use parakahler_core::rational::{self, Rational};
use parakahler_core::rootsys::{Root, RootSystem, SimpleType};

type Q = ParaComplex<Rational>;

fn pc() -> impl Strategy<Value = Q> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
        .prop_map(|(a, b, c, d)| ParaComplex::new(rational::frac(a, b), rational::frac(c, d)))
}

fn simple_type() -> impl Strategy<Value = SimpleType> {
    let all = SimpleType::all_up_to(5);
    (0..all.len()).prop_map(move |i| all[i])
}

fn graded() -> impl Strategy<Value = (SimpleType, u32)> {
    simple_type().prop_flat_map(|t| (Just(t), 1u32..(1 << t.rank())))
}

fn crossing(t: SimpleType, mask: u32) -> CrossingSet {
    CrossingSet::new(t.rank(), (0..t.rank()).filter(|i| mask & (1 << i) != 0)).unwrap()
}

proptest! {
    #[test]
    fn ring_laws(z in pc(), w in pc(), v in pc()) {
        prop_assert_eq!((z.clone() * w.clone()) * v.clone(), z.clone() * (w.clone() * v.clone()));
        prop_assert_eq!(z.clone() * w.clone(), w.clone() * z.clone());
        prop_assert_eq!(z.clone() * (w.clone() + v.clone()), z.clone() * w.clone() + z.clone() * v.clone());
        prop_assert_eq!((z.clone() * w.clone()).conj(), z.conj() * w.conj());
        let n = z.clone() * z.conj();
        prop_assert_eq!(n.re, z.re.clone() * z.re.clone() - z.im.clone() * z.im.clone());
        prop_assert!(n.im.is_zero());
    }

    #[test]
    fn inverse_off_null_cone(z in pc()) {
        match z.inv() {
            Ok(w) => prop_assert_eq!(z * w, Q::one()),
            Err(_) => prop_assert!(z.is_null()),
        }
    }

    #[test]
    fn roots_closed_under_reflection(t in simple_type(), a in 0usize..200, b in 0usize..200) {
        let rs = RootSystem::build(t);
        let n2 = 2 * rs.num_positive();
        let (ra, rb) = (rs.root(a % n2), rs.root(b % n2));
        // s_α(β) = β - ⟨β, α∨⟩ α
        let pairing = 2 * rs.root_inner(&rb, &ra) / rs.root_norm(&ra);
        prop_assert_eq!(2 * rs.root_inner(&rb, &ra) % rs.root_norm(&ra), 0);
        let reflected = Root(rb.coeffs().iter().zip(ra.coeffs()).map(|(x, y)| x - pairing * y).collect());
        prop_assert!(rs.is_root(&reflected));
        prop_assert!(rb.height() <= rs.highest_root().height());
    }

    #[test]
    fn koszul_invariants((t, mask) in graded()) {
        let rs = RootSystem::build(t);
        let g = grade_from_crossing(&rs, &crossing(t, mask)).unwrap();
        let psi = koszul::koszul_form(&g);
        let rho = koszul::rho(&g);
        prop_assert!(koszul::is_positive_on_nilradical(&rho, &g));
        for a in g.zero_roots() {
            prop_assert!(rho.coeff(a).is_zero());
        }
        let mut sum = parakahler_core::rootsys::Weight::zero(rs.rank());
        for (i, c) in koszul::koszul_coefficients(&g) {
            prop_assert!(c.a >= 2 && c.b >= 0);
            sum = sum.add(&rs.fundamental_weight(i).scale(&rational::int(2 * c.a)));
        }
        prop_assert_eq!(sum, psi);
        // degrees add along root sums
        let n = rs.num_positive();
        for a in 0..2 * n {
            for b in 0..2 * n {
                if let Some(c) = rs.root_id(&rs.root(a).add(&rs.root(b))) {
                    prop_assert_eq!(g.degree_of(c), g.degree_of(a) + g.degree_of(b));
                }
            }
        }
    }

    #[test]
    fn einstein_scaling((t, mask) in graded(), p in 1i64..9, q in 1i64..9) {
        prop_assume!(t.rank() <= 3);
        let rs = RootSystem::build(t);
        let l = chevalley_constants(&rs);
        let g = grade_from_crossing(&rs, &crossing(t, mask)).unwrap();
        let lam = rational::frac(p, q);
        let e1 = koszul::einstein_structure(&g, &l, &lam).unwrap();
        let e2 = koszul::einstein_structure(&g, &l, &(lam.clone() * rational::int(2))).unwrap();
        prop_assert_eq!(e2.metric(), &e1.metric().scale(&rational::frac(1, 2)));
        prop_assert!(e1.is_symmetric() && e1.is_k_skew() && e1.is_neutral());
    }

    #[test]
    fn wirtinger_matches_adapted(
        a in 0u32..3, b in 0u32..3, c in 0u32..3, d in 0u32..3,
        k1 in -5i64..5, k2 in -5i64..5,
        x in prop::collection::vec((-9i64..9, 1i64..5), 4),
    ) {
        let m = |coeff: i64, z: Vec<u32>, zbar: Vec<u32>| Monomial { coeff: rational::int(coeff), z, zbar };
        let terms = vec![
            m(k1, vec![a, b], vec![c, d]),
            m(k1, vec![c, d], vec![a, b]),
            m(k2, vec![1, 0], vec![1, 0]),
            m(k2, vec![0, 2], vec![0, 2]),
            m(1, vec![1, 1], vec![1, 1]),
        ];
        let f = ChartPotential::polynomial(2, terms).unwrap();
        let xy: Vec<Rational> = x.iter().map(|&(p, q)| rational::frac(p, q)).collect();
        let (xs, ys) = xy.split_at(2);
        let g = f.wirtinger_metric(xs, ys).unwrap();
        // adapted coordinates of z = x + e y
        let uv: Vec<Rational> = xs.iter().zip(ys).map(|(x, y)| x + y)
            .chain(xs.iter().zip(ys).map(|(x, y)| x - y)).collect();
        let h = f.exact_metric(&uv).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let (plus, minus) = g[i][j].to_idempotent();
                prop_assert_eq!(&plus, &h[(i, j)]);
                prop_assert_eq!(&minus, &h[(j, i)]);
            }
        }
    }

    #[test]
    fn metric_closure_relation(k in -4i64..5, x in prop::collection::vec((-9i64..9, 1i64..5), 4)) {
        // ∂H_{βμ}/∂u^γ is symmetric in β and γ
        let m = |coeff: i64, z: Vec<u32>, zbar: Vec<u32>| Monomial { coeff: rational::int(coeff), z, zbar };
        let f = ChartPotential::polynomial(2, vec![
            m(k, vec![2, 1], vec![1, 1]), m(k, vec![1, 1], vec![2, 1]),
            m(1, vec![0, 3], vec![1, 2]), m(1, vec![1, 2], vec![0, 3]),
        ]).unwrap();
        let poly = f.adapted_poly().unwrap();
        let p: Vec<Rational> = x.iter().map(|&(a, b)| rational::frac(a, b)).collect();
        for beta in 0..2 {
            for gamma in 0..2 {
                for mu in 0..2 {
                    let lhs = poly.derivative(beta).derivative(2 + mu).derivative(gamma).evaluate(&p);
                    let rhs = poly.derivative(gamma).derivative(2 + mu).derivative(beta).evaluate(&p);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn unit_is_one() {
    assert!(Q::one().conj() == Q::one());
}
