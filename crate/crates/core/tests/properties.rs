use bridge_forge::farey::{farey_neighbor, is_farey_edge, reflection_in_edge, FareyEdge};
use bridge_forge::sl2_oracle::{evaluate, numeric_reps};
use bridge_forge::smallcancel::{is_piece, knot_symmetrized_set};
use bridge_forge::words::{free_reduce, Generator};
use bridge_forge::{Fraction, GenusOneKnot, Letter, ReducedWord, Sign, Word};
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    (any::<bool>(), any::<bool>()).prop_map(|(g, pos)| {
        Letter::new(if g { Generator::A } else { Generator::B }, pos)
    })
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..max).prop_map(Word::new)
}

fn knot() -> impl Strategy<Value = GenusOneKnot> {
    (1u32..5, 1u32..5, any::<bool>()).prop_map(|(m, n, plus)| {
        GenusOneKnot::new(m, n, if plus { Sign::Plus } else { Sign::Minus }).unwrap()
    })
}

fn fraction() -> impl Strategy<Value = Fraction> {
    (-50i64..50, 1i64..50).prop_map(|(a, b)| Fraction::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn free_reduce_is_idempotent(w in word(40)) {
        let once = free_reduce(&w);
        let twice = free_reduce(&Word::from(&once));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn reduction_commutes_with_inverse(w in word(40)) {
        prop_assert_eq!(free_reduce(&w.inverse()), free_reduce(&w).inverse());
    }

    #[test]
    fn pieces_closed_under_prefix_and_inverse(k in knot(), start in 0usize..64, len in 1usize..12) {
        let set = knot_symmetrized_set(&k).unwrap();
        let elem = &set.elements()[start % set.len()];
        let len = len.min(elem.len());
        let v: ReducedWord = free_reduce(&Word::new(elem.letters()[..len].to_vec()));
        let piece = is_piece(&v, &set);
        prop_assert_eq!(piece, is_piece(&v.inverse(), &set));
        if piece && len > 1 {
            let shorter = free_reduce(&Word::new(elem.letters()[..len - 1].to_vec()));
            prop_assert!(is_piece(&shorter, &set));
        }
    }

    #[test]
    fn reflection_is_an_involution(x in fraction(), y in fraction()) {
        let edge = FareyEdge::new(x.clone(), farey_neighbor(&x)).unwrap();
        let refl = reflection_in_edge(&edge);
        prop_assert_eq!(refl.apply(&refl.apply(&y)), y);
        prop_assert_eq!(refl.apply(&x), x);
    }

    #[test]
    fn reflections_preserve_farey_edges(x in fraction(), y in fraction()) {
        let edge = FareyEdge::new(x.clone(), farey_neighbor(&x)).unwrap();
        let refl = reflection_in_edge(&edge);
        let z = farey_neighbor(&y);
        prop_assert!(is_farey_edge(&refl.apply(&y), &refl.apply(&z)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(20), v in word(20)) {
        let rep = numeric_reps(&Fraction::new(2, 5).unwrap(), 1e-9).unwrap().reps[0].clone();
        let lhs = evaluate(&u.concat(&v), &rep);
        let rhs = evaluate(&u, &rep).mul(&evaluate(&v, &rep));
        let scale = lhs.max_abs().max(1.0);
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((lhs.0[i][j] - rhs.0[i][j]).norm() <= 1e-9 * scale);
            }
        }
        let reduced = evaluate(&Word::from(free_reduce(&u)), &rep);
        prop_assert!((reduced.0[0][0] - evaluate(&u, &rep).0[0][0]).norm() <= 1e-9 * scale.max(reduced.max_abs()));
    }
}
