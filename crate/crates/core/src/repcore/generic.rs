use rand::Rng;

use super::context::{to_signed, DimVector, QuiverAlgebraContext};
use super::homext::{ext_dim, hom_dim};
use super::rep::QuiverRep;
use crate::error::{Error, Result};
use crate::fp::{self, Mat};

/// Nonzero `d` with entries at most `bound` and `<d, d> = 1`, ordered by
/// total dimension and then lexicographically.
pub fn positive_roots(ctx: &QuiverAlgebraContext, bound: usize) -> Vec<DimVector> {
    let n = ctx.rank();
    let mut out = Vec::new();
    let mut d = vec![0usize; n];
    loop {
        let mut k = 0;
        while k < n && d[k] == bound {
            d[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
        d[k] += 1;
        let s = to_signed(&d);
        if ctx.euler_form(&s, &s) == Ok(1) {
            out.push(d.clone());
        }
    }
    out.sort_by(|a, b| {
        let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

/// Samples arrow matrices uniformly until the result has one-dimensional
/// endomorphisms and no self-extensions.
pub fn generic_rep<R: Rng>(
    ctx: &QuiverAlgebraContext,
    d: &[usize],
    p: u64,
    attempts: usize,
    rng: &mut R,
) -> Result<QuiverRep> {
    fp::check_prime(p)?;
    if d.len() != ctx.rank() {
        return Err(Error::Length {
            left: d.len(),
            right: ctx.rank(),
        });
    }
    let s = to_signed(d);
    if ctx.euler_form(&s, &s)? != 1 {
        return Err(Error::Precondition(format!("{d:?} is not a real root")));
    }
    let arrows = ctx.quiver().arrow_list();
    for _ in 0..attempts {
        let maps: Vec<Mat> = arrows
            .iter()
            .map(|&(src, tgt)| {
                let data = (0..d[tgt] * d[src]).map(|_| rng.gen_range(0..p)).collect();
                Mat::from_rows(d[tgt], d[src], data).expect("sized data")
            })
            .collect();
        let rep = QuiverRep::new(p, d.to_vec(), arrows.clone(), maps)?;
        if hom_dim(&rep, &rep)? == 1 && ext_dim(&rep, &rep)? == 0 {
            return Ok(rep);
        }
    }
    Err(Error::SamplingExhausted {
        dims: d.to_vec(),
        prime: p,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dynkin_root_counts() {
        let a2 = QuiverAlgebraContext::preset("a2").unwrap();
        assert_eq!(positive_roots(&a2, 2), vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        for (name, count) in [("a1", 1), ("a3", 6), ("a4", 10), ("d4", 12)] {
            let ctx = QuiverAlgebraContext::preset(name).unwrap();
            assert_eq!(positive_roots(&ctx, 3).len(), count, "{name}");
        }
    }

    #[test]
    fn simple_roots_included() {
        let ctx = QuiverAlgebraContext::preset("kronecker").unwrap();
        let roots = positive_roots(&ctx, 3);
        assert!(roots.contains(&vec![1, 0]) && roots.contains(&vec![0, 1]));
        assert!(roots.contains(&vec![2, 3]) && roots.contains(&vec![3, 2]));
        assert!(!roots.contains(&vec![1, 1]));
    }

    #[test]
    fn sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ctx = QuiverAlgebraContext::preset("kronecker").unwrap();
        let m = generic_rep(&ctx, &[1, 2], 101, 100, &mut rng).unwrap();
        assert_eq!(hom_dim(&m, &m).unwrap(), 1);
        let s = generic_rep(&ctx, &[0, 1], 2, 1, &mut rng).unwrap();
        assert_eq!(s.dims(), &[0, 1]);
        let a3 = QuiverAlgebraContext::preset("a3").unwrap();
        let m = generic_rep(&a3, &[1, 1, 1], 101, 100, &mut rng).unwrap();
        assert_eq!(ext_dim(&m, &m).unwrap(), 0);
        assert!(generic_rep(&ctx, &[1, 1], 101, 10, &mut rng).is_err());
        assert!(matches!(
            generic_rep(&ctx, &[1, 2], 101, 0, &mut rng),
            Err(Error::SamplingExhausted { .. })
        ));
    }
}
