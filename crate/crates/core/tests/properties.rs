use std::sync::Arc;

use proptest::prelude::*;

use cluster_forge::ccmap::{cc_by_definition, cc_from_table, cc_of_object, chi_table, CcOptions};
use cluster_forge::fp;
use cluster_forge::mutation::{QuiverSpec, Seed};
use cluster_forge::repcore::{
    ext_dim, hom_dim, positive_roots, to_signed, ClusterObject, GenericFamily, QuiverAlgebraContext, QuiverRep,
    DEFAULT_SEED,
};

const QUIVERS: [&str; 5] = ["a2", "a3", "a4", "d4", "kronecker"];

fn ctx(name: &str) -> Arc<QuiverAlgebraContext> {
    Arc::new(QuiverAlgebraContext::preset(name).unwrap())
}

fn random_rep(quiver: &QuiverSpec, dims: &[usize], entries: &[i64], p: u64) -> QuiverRep {
    let arrows = quiver.arrow_list();
    let mut it = entries.iter().cycle();
    let maps: Vec<Vec<Vec<i64>>> = arrows
        .iter()
        .map(|&(s, t)| (0..dims[t]).map(|_| (0..dims[s]).map(|_| *it.next().unwrap()).collect()).collect())
        .collect();
    QuiverRep::from_integers(p, dims.to_vec(), arrows, &maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mutation_is_an_involution(
        q in 0..QUIVERS.len(),
        path in prop::collection::vec(0usize..4, 0..6),
        j in 0usize..4,
    ) {
        let quiver = QuiverSpec::preset(QUIVERS[q]).unwrap();
        let n = quiver.vertex_count();
        let mut seed = Seed::initial(quiver.to_matrix());
        for k in path {
            seed = seed.mutate(k % n).unwrap();
        }
        let back = seed.mutate(j % n).unwrap().mutate(j % n).unwrap();
        prop_assert_eq!(back, seed);
    }

    #[test]
    fn hom_minus_ext_is_euler_form(
        q in 0..QUIVERS.len(),
        d in prop::collection::vec(0usize..3, 4),
        e in prop::collection::vec(0usize..3, 4),
        a in prop::collection::vec(-2i64..3, 1..20),
        b in prop::collection::vec(-2i64..3, 1..20),
    ) {
        let c = ctx(QUIVERS[q]);
        let n = c.rank();
        let m = random_rep(c.quiver(), &d[..n], &a, 5);
        let nn = random_rep(c.quiver(), &e[..n], &b, 5);
        let lhs = hom_dim(&m, &nn).unwrap() as i64 - ext_dim(&m, &nn).unwrap() as i64;
        prop_assert_eq!(lhs, c.euler_form(&to_signed(&d[..n]), &to_signed(&e[..n])).unwrap());
    }
}

#[test]
fn interpolation_agrees_on_disjoint_primes() {
    let all: Vec<u64> = fp::primes().take(24).collect();
    let (low, high) = all.split_at(12);
    for name in ["a3", "d4", "kronecker"] {
        let c = ctx(name);
        for d in positive_roots(&c, 2) {
            let fam = GenericFamily::new(c.clone(), d.clone(), DEFAULT_SEED).unwrap();
            let t = |primes: &[u64]| {
                let opts = CcOptions { primes: Some(primes.to_vec()), ..Default::default() };
                chi_table(&c, &fam, &opts).unwrap()
            };
            assert_eq!(t(low), t(high), "{name} {d:?}");
        }
    }
}

#[test]
fn both_formulas_agree() {
    for name in ["a2", "a3", "a4", "d4", "kronecker"] {
        let c = ctx(name);
        for d in positive_roots(&c, 2) {
            let fam = GenericFamily::new(c.clone(), d.clone(), DEFAULT_SEED).unwrap();
            let table = chi_table(&c, &fam, &CcOptions::default()).unwrap();
            assert_eq!(
                cc_from_table(&c, &d, &table).unwrap(),
                cc_by_definition(&c, &d, &table).unwrap(),
                "{name} {d:?}"
            );
        }
    }
}

#[test]
fn cc_is_multiplicative_on_sums() {
    let c = ctx("a3");
    let opts = CcOptions::default();
    let roots = positive_roots(&c, 1);
    let objects: Vec<ClusterObject> = roots
        .iter()
        .map(|d| ClusterObject::module(Arc::new(GenericFamily::new(c.clone(), d.clone(), DEFAULT_SEED).unwrap())))
        .chain((0..3).map(|i| ClusterObject::shifted_projective(3, i).unwrap()))
        .collect();
    for x in &objects {
        for y in &objects {
            let sum = x.direct_sum(y).unwrap();
            let lhs = cc_of_object(&c, &sum, &opts).unwrap().polynomial;
            let rhs = cc_of_object(&c, x, &opts)
                .unwrap()
                .polynomial
                .checked_mul(&cc_of_object(&c, y, &opts).unwrap().polynomial)
                .unwrap();
            assert_eq!(lhs, rhs, "{} + {}", x.describe(), y.describe());
        }
    }
}
