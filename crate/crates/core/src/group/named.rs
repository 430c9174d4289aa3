use super::{FiniteGroup, GroupError};

/// Builds a group from a textual spec:
/// `cyclic:n`, `dihedral:n` (order `2n`), `symmetric:n`, `alternating:n`,
/// `quaternion`, `klein`, `trivial`, or `product:(spec,spec)`.
pub fn named_group(spec: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let order = predicted_order(spec)?;
    if order > cap {
        return Err(GroupError::SizeLimitExceeded { order, cap });
    }
    build(spec).map(|g| g.with_label(spec))
}

/// Expands a family spec into group specs: `cyclic2powers:a..b` gives the
/// cyclic groups of each power-of-two order in `a..=b`, `dihedral:a..b` gives
/// `dihedral:n` for `n` in `a..=b`, and anything else is read as a
/// `;`-separated list of group specs.
pub fn named_family(spec: &str) -> Result<Vec<String>, GroupError> {
    let spec = spec.trim();
    let range = |prefix: &str| -> Option<(usize, usize)> {
        let (a, b) = spec.strip_prefix(prefix)?.split_once("..")?;
        Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
    };
    if let Some((a, b)) = range("cyclic2powers:") {
        return Ok(std::iter::successors(Some(1usize), |&k| k.checked_mul(2))
            .skip_while(|&k| k < a)
            .take_while(|&k| k <= b)
            .map(|k| format!("cyclic:{k}"))
            .collect());
    }
    if let Some((a, b)) = range("dihedral:") {
        return Ok((a..=b).map(|n| format!("dihedral:{n}")).collect());
    }
    if spec.starts_with("cyclic2powers:") || (spec.starts_with("dihedral:") && spec.contains("..")) {
        return Err(unknown(spec));
    }
    Ok(spec.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
}

fn unknown(spec: &str) -> GroupError {
    GroupError::UnknownSpec(spec.to_string())
}

fn split_product(spec: &str) -> Option<(&str, &str)> {
    let inner = spec.strip_prefix("product:")?.trim().strip_prefix('(')?.strip_suffix(')')?;
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => return Some((inner[..i].trim(), inner[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

fn parameter(spec: &str, prefix: &str) -> Option<usize> {
    spec.strip_prefix(prefix)?.trim().parse().ok()
}

fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}

fn predicted_order(spec: &str) -> Result<usize, GroupError> {
    if let Some((a, b)) = split_product(spec) {
        return Ok(predicted_order(a)?.saturating_mul(predicted_order(b)?));
    }
    let order = match spec {
        "quaternion" => 8,
        "klein" => 4,
        "trivial" => 1,
        _ => {
            if let Some(n) = parameter(spec, "cyclic:") {
                n
            } else if let Some(n) = parameter(spec, "dihedral:") {
                n.saturating_mul(2)
            } else if let Some(n) = parameter(spec, "symmetric:") {
                factorial(n)
            } else if let Some(n) = parameter(spec, "alternating:") {
                (factorial(n) / 2).max(1)
            } else {
                return Err(unknown(spec));
            }
        }
    };
    if order == 0 {
        return Err(unknown(spec));
    }
    Ok(order)
}

fn build(spec: &str) -> Result<FiniteGroup, GroupError> {
    if let Some((a, b)) = split_product(spec) {
        return Ok(product(&build(a)?, &build(b)?));
    }
    match spec {
        "quaternion" => return Ok(quaternion()),
        "klein" => return Ok(product(&cyclic(2), &cyclic(2))),
        "trivial" => return Ok(cyclic(1)),
        _ => {}
    }
    if let Some(n) = parameter(spec, "cyclic:") {
        Ok(cyclic(n))
    } else if let Some(n) = parameter(spec, "dihedral:") {
        Ok(dihedral(n))
    } else if let Some(n) = parameter(spec, "symmetric:") {
        Ok(permutation_group(n, false))
    } else if let Some(n) = parameter(spec, "alternating:") {
        Ok(permutation_group(n, true))
    } else {
        Err(unknown(spec))
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn("", n, |x, y| (x + y) % n)
}

/// Rotations are `0..n`, reflections `n..2n`; element `f*n + k` is `s^f r^k`.
fn dihedral(n: usize) -> FiniteGroup {
    FiniteGroup::from_fn("", 2 * n, |x, y| {
        let (f1, k1) = (x / n, x % n);
        let (f2, k2) = (y / n, y % n);
        // r^k s = s r^-k
        let k1 = if f2 == 1 { (n - k1) % n } else { k1 };
        ((f1 + f2) % 2) * n + (k1 + k2) % n
    })
}

/// Q8 as `±1, ±i, ±j, ±k`; element `2u + s` has unit `u` and sign bit `s`.
fn quaternion() -> FiniteGroup {
    // unit products: (unit, negate)
    const UNITS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    FiniteGroup::from_fn("", 8, |x, y| {
        let (u, neg) = UNITS[x / 2][y / 2];
        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
        2 * u + sign
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions: usize = (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum();
    inversions.is_multiple_of(2)
}

/// Permutations in lexicographic order, multiplied as composition `(pq)(i) = p(q(i))`.
fn permutation_group(n: usize, even_only: bool) -> FiniteGroup {
    let perms: Vec<Vec<usize>> = permutations(n).into_iter().filter(|p| !even_only || is_even(p)).collect();
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    FiniteGroup::from_fn("", perms.len(), |x, y| {
        let composed: Vec<usize> = perms[y].iter().map(|&i| perms[x][i]).collect();
        index[&composed]
    })
}

/// Direct product; the pair `(a, b)` is element `a * |B| + b`.
pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let nb = b.order();
    FiniteGroup::from_fn(format!("product:({},{})", a.label(), b.label()), a.order() * nb, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_MAX_ORDER;

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(g("cyclic:4").order(), 4);
        assert_eq!(g("quaternion").order(), 8);
        assert_eq!(g("dihedral:4").order(), 8);
        assert_eq!(g("symmetric:4").order(), 24);
        assert_eq!(g("alternating:5").order(), 60);
        assert_eq!(g("product:(quaternion,cyclic:3)").order(), 24);
    }

    #[test]
    fn product_of_coprime_cyclics_is_cyclic() {
        let p = g("product:(cyclic:2,cyclic:3)");
        assert_eq!(p.order(), 6);
        assert!(p.is_abelian());
        assert_eq!(p.exponent(), 6);
    }

    #[test]
    fn nested_products() {
        let p = g("product:(product:(cyclic:2,cyclic:2),cyclic:2)");
        assert_eq!(p.order(), 8);
        assert_eq!(p.exponent(), 2);
    }

    #[test]
    fn quaternion_structure() {
        let q = g("quaternion");
        assert!(!q.is_abelian());
        let order_two: Vec<usize> = q.elements().filter(|&x| q.element_order(x) == 2).collect();
        assert_eq!(order_two, vec![1]);
    }

    #[test]
    fn dihedral_is_nonabelian() {
        let d = g("dihedral:4");
        assert!(!d.is_abelian());
        assert_eq!(d.exponent(), 4);
    }

    #[test]
    fn families() {
        assert_eq!(named_family("cyclic2powers:4..32").unwrap(), ["cyclic:4", "cyclic:8", "cyclic:16", "cyclic:32"]);
        assert_eq!(named_family("cyclic2powers:3..256").unwrap().len(), 7);
        assert_eq!(named_family("dihedral:4..6").unwrap(), ["dihedral:4", "dihedral:5", "dihedral:6"]);
        assert_eq!(
            named_family("quaternion; product:(cyclic:2,cyclic:2)").unwrap(),
            ["quaternion", "product:(cyclic:2,cyclic:2)"]
        );
        assert!(named_family("cyclic2powers:x..4").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(named_group("cyclic:x", 100), Err(GroupError::UnknownSpec(_))));
        assert!(matches!(named_group("octonion", 100), Err(GroupError::UnknownSpec(_))));
        assert!(matches!(
            named_group("symmetric:8", DEFAULT_MAX_ORDER),
            Err(GroupError::SizeLimitExceeded { order: 40320, cap: 5040 })
        ));
    }
}
