//! Property tests for the algebraic layers: generated inputs instead of
//! hand-picked cases.

use proptest::prelude::*;

use numberwall::field::{Field, FieldSpec};
use numberwall::laurent::LaurentTrunc;
use numberwall::poly::{base_p_expand, padic_norm_exp, Degree, Poly};
use numberwall::seq::Seq;
use numberwall::wall::Wall;

fn gf(p: u64) -> Field {
    FieldSpec::make(p, 1, None).unwrap()
}

fn poly_strategy(p: u64, max_deg: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0..p as u16, 0..=max_deg + 1)
}

proptest! {
    #[test]
    fn divmod_reconstructs(a in poly_strategy(5, 10), b in poly_strategy(5, 4)) {
        let f = gf(5);
        let a = Poly::from_codes(f.clone(), &a).unwrap();
        let b = Poly::from_codes(f, &b).unwrap();
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn base_p_expansion_reassembles(n in poly_strategy(3, 12), pc in poly_strategy(3, 2)) {
        let f = gf(3);
        let n = Poly::from_codes(f.clone(), &n).unwrap();
        let mut pc = pc;
        pc.push(1); // monic
        let p = Poly::from_codes(f, &pc).unwrap();
        prop_assume!(p.degree() >= Degree::Of(1));
        prop_assume!(p.is_irreducible());
        let e = base_p_expand(&n, &p).unwrap();
        prop_assert_eq!(e.reassemble(), n);
        for d in &e.digits {
            prop_assert!(d.degree() < p.degree());
        }
    }

    #[test]
    fn padic_norm_is_additive_under_p(n in poly_strategy(2, 9)) {
        let f = gf(2);
        let n = Poly::from_codes(f.clone(), &n).unwrap();
        prop_assume!(!n.is_zero());
        let p = Poly::from_codes(f, &[1, 1, 1]).unwrap(); // t^2+t+1
        let lhs = padic_norm_exp(&n.mul(&p), &p).unwrap();
        prop_assert_eq!(lhs, padic_norm_exp(&n, &p).unwrap() + 2);
    }

    #[test]
    fn degree_is_ultrametric(a in poly_strategy(5, 9), b in poly_strategy(5, 9)) {
        let f = gf(5);
        let a = Poly::from_codes(f.clone(), &a).unwrap();
        let b = Poly::from_codes(f, &b).unwrap();
        let s = a.add(&b);
        prop_assert!(s.degree() <= a.degree().max(b.degree()));
        if a.degree() != b.degree() {
            prop_assert_eq!(s.degree(), a.degree().max(b.degree()));
        }
    }

    #[test]
    fn series_product_precision_and_degree(
        coeffs in prop::collection::vec(0..3u16, 1..24),
        nc in poly_strategy(3, 3),
    ) {
        let f = gf(3);
        let theta = LaurentTrunc::new(f.clone(), -1, &coeffs, coeffs.len() as i64).unwrap();
        let n = Poly::from_codes(f, &nc).unwrap();
        prop_assume!(!n.is_zero());
        let dn = n.degree().finite().unwrap();
        prop_assume!(theta.prec() - dn >= 1);
        let prod = theta.mul_poly(&n).unwrap();
        prop_assert_eq!(prod.prec(), theta.prec() - dn);
        match (theta.deg(), prod.deg()) {
            (Some(dt), Some(dp)) => prop_assert_eq!(dp, dt + dn),
            (None, got) => prop_assert_eq!(got, None),
            (Some(_), None) => prop_assert!(false, "product of nonzero series vanished"),
        }
    }

    #[test]
    fn wall_windows_always_square(codes in prop::collection::vec(0..3u16, 1..26)) {
        // detect_windows errors on any non-square zero region; it must
        // never fire on an engine-built wall
        let f = gf(3);
        let s = Seq::from_codes(f, codes).unwrap();
        let wall = Wall::frame(&s).unwrap();
        prop_assert!(wall.windows().iter().all(|w| w.l >= 1));
    }

    #[test]
    fn seq_file_round_trip(codes in prop::collection::vec(0..5u64, 1..30)) {
        let body: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        let text = format!("# field: 5^1\n{}\n", body.join(","));
        let (field, parsed) = numberwall::seq::parse_seq_file(&text).unwrap();
        prop_assert_eq!(field.as_deref(), Some("5^1"));
        prop_assert_eq!(parsed, codes);
    }
}
