use super::formula::{and, exists, forall, implies, j, neq, not, or, tt, Term, F};
use crate::error::{Error, Result};

fn is_reserved(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a' | 'b' | 'c'))
        && chars.next() == Some('_')
        && !chars.as_str().is_empty()
        && chars.as_str().chars().all(|c| c.is_ascii_digit())
}

fn v(name: &str) -> Term {
    Term::var(name)
}

/// The formula `μ_n(V, W)`: ∃ wins `Γ_n(λ[V], λ[W])`.
///
/// Bound variables at level `k` are named `a_k`, `b_k` and `c_k`, so `V` and
/// `W` must be disjoint and avoid those names.
pub fn gen_mu(n: usize, vs: &[&str], ws: &[&str]) -> Result<F> {
    if let Some(x) = vs.iter().chain(ws).find(|x| is_reserved(x)) {
        return Err(Error::Formula(format!("variable `{x}` clashes with a bound variable name")));
    }
    if let Some(x) = vs.iter().find(|x| ws.contains(x)) {
        return Err(Error::Formula(format!("variable `{x}` is in both V and W")));
    }
    let vs: Vec<String> = vs.iter().map(|s| s.to_string()).collect();
    let ws: Vec<String> = ws.iter().map(|s| s.to_string()).collect();
    Ok(mu(n, &vs, &ws))
}

fn mu(n: usize, vs: &[String], ws: &[String]) -> F {
    if n == 0 {
        let c = "c_0";
        let mut parts = Vec::new();
        for x in vs {
            for y in vs {
                parts.push(not(exists(&[c], j(x, y, c))));
            }
        }
        for x in vs {
            for w in ws {
                parts.push(neq(v(x), v(w)));
            }
        }
        return and(parts);
    }
    let a = format!("a_{n}");
    let b = format!("b_{n}");
    let extend = |e: &str| {
        let mut out = vs.to_vec();
        out.push(e.to_string());
        out
    };
    let with_a = mu(n - 1, &extend(&a), ws);
    let with_b = mu(n - 1, &extend(&b), ws);
    let mut split = Vec::new();
    let mut right = Vec::new();
    let mut left = Vec::new();
    for x in vs {
        split.push(implies(j(&a, &b, x), or(vec![with_a.clone(), with_b.clone()])));
        right.push(implies(j(&a, x, &b), with_b.clone()));
        left.push(implies(j(x, &a, &b), with_b.clone()));
    }
    split.extend(right);
    split.extend(left);
    let body = and(split);
    forall(&[&a, &b], body)
}

/// The sentence `ρ_n`: ∃ wins `Γ_n`. `ρ_0` is `⊤`.
pub fn gen_rho(n: usize) -> F {
    if n == 0 {
        return tt();
    }
    let a = format!("a_{n}");
    let b = format!("b_{n}");
    let c = format!("c_{n}");
    let s = |x: &String| vec![x.clone()];
    let distinct = or(vec![
        super::formula::eq(v(&a), v(&b)),
        mu(n - 1, &s(&a), &s(&b)),
        mu(n - 1, &s(&b), &s(&a)),
    ]);
    let undefined = or(vec![exists(&[&c], j(&a, &b, &c)), mu(n - 1, &[a.clone(), b.clone()], &[])]);
    forall(&[&a, &b], and(vec![distinct, undefined]))
}
