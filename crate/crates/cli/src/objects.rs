//! Parsing of `--object` specifications such as `kronecker:U:2 + SP:1`.

use std::sync::Arc;

use cluster_forge::repcore::{
    parse_fixture, simple_family, to_dims, ClusterObject, Family, GenericFamily, QuiverAlgebraContext,
};
use cluster_forge::{Error, Result};

fn vertex(ctx: &QuiverAlgebraContext, s: &str) -> Result<usize> {
    let i: usize = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad vertex {s:?}")))?;
    if i == 0 || i > ctx.rank() {
        return Err(Error::IndexOutOfRange {
            index: i,
            size: ctx.rank(),
        });
    }
    Ok(i - 1)
}

/// `1,2,0` as a dimension vector of the right length.
fn parse_dims(ctx: &QuiverAlgebraContext, s: &str) -> Result<Vec<usize>> {
    let dims = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad dimension vector {s:?}")))?;
    if dims.len() != ctx.rank() {
        return Err(Error::Length {
            left: dims.len(),
            right: ctx.rank(),
        });
    }
    Ok(dims)
}

fn generic(ctx: &Arc<QuiverAlgebraContext>, dims: &[i64], seed: u64) -> Result<Family> {
    let dims = to_dims(dims).ok_or_else(|| Error::Parse(format!("{dims:?} is not a dimension vector")))?;
    Ok(Arc::new(GenericFamily::new(ctx.clone(), dims, seed)?))
}

fn term(ctx: &Arc<QuiverAlgebraContext>, spec: &str, seed: u64) -> Result<ClusterObject> {
    let n = ctx.rank();
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    match head.to_ascii_lowercase().as_str() {
        "0" if rest.is_empty() => Ok(ClusterObject::zero(n)),
        "sp" => ClusterObject::shifted_projective(n, vertex(ctx, rest)?),
        "s" => Ok(ClusterObject::module(simple_family(ctx.quiver(), vertex(ctx, rest)?)?)),
        "p" => {
            let i = vertex(ctx, rest)?;
            Ok(ClusterObject::module(generic(ctx, ctx.projective_dims(i), seed)?))
        }
        "i" => {
            let i = vertex(ctx, rest)?;
            Ok(ClusterObject::module(generic(ctx, ctx.injective_dims(i), seed)?))
        }
        "root" => {
            let d = parse_dims(ctx, rest)?;
            let d: Vec<i64> = d.iter().map(|&x| x as i64).collect();
            Ok(ClusterObject::module(generic(ctx, &d, seed)?))
        }
        "kronecker" => {
            let rep = parse_fixture(spec)?;
            if n != 2 || ctx.quiver().arrow_count(0, 1) != 2 {
                return Err(Error::ContextMismatch);
            }
            Ok(ClusterObject::module(Arc::new(rep)))
        }
        _ => Err(Error::Parse(format!("unknown object {spec:?}"))),
    }
}

/// A `+`-separated direct sum of `SP:i`, `S:i`, `P:i`, `I:i`, `root:d`,
/// `kronecker:…` and `0`, vertices 1-based.
pub fn parse_object(ctx: &Arc<QuiverAlgebraContext>, spec: &str, seed: u64) -> Result<ClusterObject> {
    spec.split('+')
        .map(str::trim)
        .try_fold(ClusterObject::zero(ctx.rank()), |acc, t| {
            if t.is_empty() {
                return Err(Error::Parse(format!("empty summand in {spec:?}")));
            }
            acc.direct_sum(&term(ctx, t, seed)?)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(name: &str) -> Arc<QuiverAlgebraContext> {
        Arc::new(QuiverAlgebraContext::preset(name).unwrap())
    }

    #[test]
    fn sums_and_atoms() {
        let k = ctx("kronecker");
        let o = parse_object(&k, "kronecker:U:1 + SP:2", 1).unwrap();
        assert_eq!(o.module_dims(), vec![1, 2]);
        assert_eq!(o.shifted(), &[1]);
        let a = ctx("a3");
        assert_eq!(parse_object(&a, "P:1", 1).unwrap().module_dims(), vec![1, 1, 1]);
        assert_eq!(parse_object(&a, "I:1", 1).unwrap().module_dims(), vec![1, 0, 0]);
        assert_eq!(parse_object(&a, "root:0,1,1", 1).unwrap().module_dims(), vec![0, 1, 1]);
        assert!(parse_object(&a, "0", 1).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_specs() {
        let a = ctx("a2");
        assert!(parse_object(&a, "SP:3", 1).is_err());
        assert!(parse_object(&a, "SP:0", 1).is_err());
        assert!(parse_object(&a, "kronecker:U:1", 1).is_err());
        assert!(parse_object(&a, "root:1,1,1", 1).is_err());
        assert!(parse_object(&a, "root:2,0", 1).is_err());
        assert!(parse_object(&a, "SP:1 +", 1).is_err());
        assert!(parse_object(&a, "Q:1", 1).is_err());
    }
}
