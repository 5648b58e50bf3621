//! Group-theoretic properties: the word problem as an equivalence relation
//! compatible with the operations, band generator invariants, and
//! well-definedness of the Hurwitz action on equivalence classes.

use braidmono::braid::{BandGenerator, BraidWord};
use braidmono::hurwitz::{hurwitz_act, HurwitzTuple};
use braidmono::perm::Permutation;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut ChaCha8Rng, m: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..m as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(m, letters).unwrap()
}

/// Inserts a relator (identity subword) at a random position.
fn insert_relator(rng: &mut ChaCha8Rng, w: &BraidWord) -> BraidWord {
    let m = w.strands();
    let relator: Vec<i32> = match rng.gen_range(0..3) {
        0 => {
            let i = rng.gen_range(1..m as i32);
            vec![i, -i]
        }
        1 if m >= 3 => {
            let i = rng.gen_range(1..m as i32 - 1);
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
        }
        _ if m >= 4 => {
            let i = rng.gen_range(1..=(m as i32 - 3));
            let j = rng.gen_range((i + 2)..(m as i32));
            vec![i, j, -i, -j]
        }
        _ => {
            let i = rng.gen_range(1..m as i32);
            vec![-i, i]
        }
    };
    let pos = rng.gen_range(0..=w.len());
    let mut letters = w.letters().to_vec();
    letters.splice(pos..pos, relator);
    BraidWord::new(m, letters).unwrap()
}

#[test]
fn equality_is_a_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..120 {
        let m = rng.gen_range(3..=6usize);
        let len = rng.gen_range(0..18);
        let a = random_word(&mut rng, m, len);
        let b = insert_relator(&mut rng, &a);
        let clen = rng.gen_range(0..10);
        let c = random_word(&mut rng, m, clen);
        assert!(a.equals(&b).unwrap());
        // compatible with composition on both sides and with inversion
        assert!(a.compose(&c).unwrap().equals(&b.compose(&c).unwrap()).unwrap());
        assert!(c.compose(&a).unwrap().equals(&c.compose(&b).unwrap()).unwrap());
        assert!(a.inverse().equals(&b.inverse()).unwrap());
        // reflexivity and symmetry on the same pair
        assert!(a.equals(&a).unwrap());
        assert!(b.equals(&a).unwrap());
    }
}

#[test]
fn band_generators_project_to_transpositions() {
    for m in 2..=8usize {
        for i in 1..m {
            // adjacent bands are the plain generator
            let b = BandGenerator::new(i, i + 1, 1).unwrap();
            assert_eq!(b.to_word(m).unwrap().letters(), &[i as i32]);
            for j in (i + 1)..=m {
                let b = BandGenerator::new(i, j, 1).unwrap();
                let t = Permutation::transposition(m, i, j).unwrap();
                assert_eq!(b.to_word(m).unwrap().permutation_image(), t);
                assert_eq!(b.to_prime_word(m).unwrap().permutation_image(), t);
            }
        }
    }
}

#[test]
fn hurwitz_action_is_well_defined_on_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..80 {
        let m = rng.gen_range(3..=6usize);
        let degree = rng.gen_range(3..=5usize);
        // random tuple of transpositions
        let entries = (0..m)
            .map(|_| {
                let a = rng.gen_range(1..=degree);
                let mut b = rng.gen_range(1..=degree);
                while b == a {
                    b = rng.gen_range(1..=degree);
                }
                Permutation::transposition(degree, a.min(b), a.max(b)).unwrap()
            })
            .collect();
        let tuple = HurwitzTuple::new(degree, entries).unwrap();
        let len = rng.gen_range(0..15);
        let a = random_word(&mut rng, m, len);
        let b = insert_relator(&mut rng, &a);
        let acted_a = hurwitz_act(&a, &tuple).unwrap();
        let acted_b = hurwitz_act(&b, &tuple).unwrap();
        assert_eq!(acted_a, acted_b, "equal words must act identically");
        // the ordered product is preserved
        assert_eq!(acted_a.product(), tuple.product());
    }
}
