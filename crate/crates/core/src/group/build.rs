//! Constructors for the standard families of groups.

use super::FiniteGroup;
use crate::arith::{self, mod_pow};
use crate::error::{Error, Result};

pub fn cyclic(n: u64, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    if n as usize > cap {
        return Err(Error::CapExceeded { cap });
    }
    let gens: Vec<u64> = if n == 1 { vec![] } else { vec![1] };
    FiniteGroup::generate(
        format!("cyclic:{n}"),
        0u64,
        &gens,
        |a, b| (a + b) % n,
        |a| a.to_string(),
        cap,
    )
}

/// Cycle notation with 1-based points; the identity prints as `()`.
pub(crate) fn perm_name(p: &[u8]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&(x + 1).to_string());
            first = false;
            x = p[x] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// Left-to-right composition: the point `x` goes to `b[a[x]]`.
fn perm_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().map(|&x| b[x as usize]).collect()
}

/// Permutation group on `degree` points generated by `gens`.
pub fn permutation_group(
    label: impl Into<String>,
    degree: usize,
    gens: &[Vec<u8>],
    cap: usize,
) -> Result<FiniteGroup> {
    let identity: Vec<u8> = (0..degree as u8).collect();
    FiniteGroup::generate(label, identity, gens, |a, b| perm_mul(a, b), |p| perm_name(p), cap)
}

pub fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("sym:0".into()));
    }
    let mut order: usize = 1;
    for k in 2..=n {
        order = order.saturating_mul(k);
        if order > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<u8> = (0..n as u8).collect();
        t.swap(0, 1);
        gens.push(t);
        if n >= 3 {
            gens.push((0..n as u8).map(|x| (x + 1) % n as u8).collect());
        }
    }
    permutation_group(format!("sym:{n}"), n, &gens, cap)
}

/// Dihedral group of order `2n`, elements `r^i s^j` with `s r s = r⁻¹`.
pub fn dihedral(n: u64, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("dihedral:0".into()));
    }
    if 2 * n as usize > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mul = move |a: &(u64, u64), b: &(u64, u64)| {
        let twisted = if a.1 == 0 { b.0 } else { (n - b.0) % n };
        ((a.0 + twisted) % n, (a.1 + b.1) % 2)
    };
    let name = |a: &(u64, u64)| match *a {
        (0, 0) => "e".to_string(),
        (i, 0) => format!("r^{i}"),
        (0, _) => "s".to_string(),
        (i, _) => format!("r^{i}s"),
    };
    let gens = if n == 1 { vec![(0, 1)] } else { vec![(1 % n, 0), (0, 1)] };
    FiniteGroup::generate(format!("dihedral:{n}"), (0, 0), &gens, mul, name, cap)
}

/// Quaternion group of order 8, via its regular permutation representation.
pub fn quaternion8() -> FiniteGroup {
    let i = cycles_to_perm(8, &[vec![1, 2, 3, 4], vec![5, 6, 7, 8]]).unwrap();
    let j = cycles_to_perm(8, &[vec![1, 5, 3, 7], vec![2, 8, 4, 6]]).unwrap();
    permutation_group("quaternion:8", 8, &[i, j], 8).expect("Q8 has order 8")
}

/// Converts 1-based cycles into an image vector.
pub(crate) fn cycles_to_perm(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<u8>> {
    if degree > u8::MAX as usize {
        return Err(Error::InvalidArgument(format!("degree {degree} too large")));
    }
    let mut p: Vec<u8> = (0..degree as u8).collect();
    let mut used = vec![false; degree];
    for cycle in cycles {
        for &x in cycle {
            if x == 0 || x > degree {
                return Err(Error::InvalidArgument(format!("point {x} outside 1..={degree}")));
            }
            if used[x - 1] {
                return Err(Error::InvalidArgument(format!("point {x} repeated")));
            }
            used[x - 1] = true;
        }
        for w in 0..cycle.len() {
            let from = cycle[w] - 1;
            let to = cycle[(w + 1) % cycle.len()] - 1;
            p[from] = to as u8;
        }
    }
    Ok(p)
}

/// Extends generator images `units` to a homomorphism `P → (Z/m)^×`, or explains why
/// it does not exist. Returns the image of every element of `P`.
pub(crate) fn extend_action(p: &FiniteGroup, m: u64, units: &[u64]) -> Result<Vec<u64>> {
    let bad = |reason: String| Error::BadAction { modulus: m, reason };
    if units.len() != p.generators().len() {
        return Err(bad(format!(
            "{} images given for {} generators",
            units.len(),
            p.generators().len()
        )));
    }
    let units: Vec<u64> = units.iter().map(|&u| u % m).collect();
    for &u in &units {
        if arith::unit_order(u, m).is_none() {
            return Err(bad(format!("{u} is not a unit")));
        }
    }
    let mut image: Vec<Option<u64>> = vec![None; p.order()];
    image[p.identity()] = Some(1 % m);
    let mut queue = vec![p.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let ix = image[x].unwrap();
        for (&g, &u) in p.generators().iter().zip(&units) {
            let y = p.compose(x, g);
            let iy = (ix as u128 * u as u128 % m as u128) as u64;
            match image[y] {
                None => {
                    image[y] = Some(iy);
                    queue.push(y);
                }
                Some(prev) if prev != iy => {
                    return Err(bad("generator images violate a relation of P".into()));
                }
                Some(_) => {}
            }
        }
    }
    let image: Vec<u64> = image
        .into_iter()
        .map(|v| v.ok_or_else(|| bad("generators do not generate P".into())))
        .collect::<Result<_>>()?;
    // A consistent Cayley-graph labelling is already multiplicative; recheck anyway
    // for generating sets that were not produced by `generate`.
    for a in p.elements() {
        for b in p.elements() {
            if image[p.compose(a, b)] != (image[a] as u128 * image[b] as u128 % m as u128) as u64 {
                return Err(bad("not multiplicative".into()));
            }
        }
    }
    Ok(image)
}

/// `Z/m ⋊ P` where the generators of `P` act on `Z/m` by multiplication with `units`.
///
/// Composition is `(c, x)·(c', x') = (c + α(x)·c', x·x')`.
pub fn semidirect_cyclic(m: u64, p: &FiniteGroup, units: &[u64], cap: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidArgument("semidirect with c:0".into()));
    }
    if (m as usize).saturating_mul(p.order()) > cap {
        return Err(Error::CapExceeded { cap });
    }
    let action = extend_action(p, m, units)?;
    let shown: Vec<String> = units.iter().map(|u| (u % m).to_string()).collect();
    let label = format!("semidirect(c:{m},p:{},action:[{}])", p.label(), shown.join(","));
    let mul = |a: &(u64, usize), b: &(u64, usize)| {
        let twisted = (action[a.1] as u128 * b.0 as u128 % m as u128) as u64;
        ((a.0 + twisted) % m, p.compose(a.1, b.1))
    };
    let name = |a: &(u64, usize)| format!("({},{})", a.0, p.name(a.1));
    let mut gens: Vec<(u64, usize)> = Vec::new();
    if m > 1 {
        gens.push((1, p.identity()));
    }
    gens.extend(p.generators().iter().map(|&g| (0, g)));
    let g = FiniteGroup::generate(label, (0, p.identity()), &gens, mul, name, cap)?;
    debug_assert_eq!(g.order(), m as usize * p.order());
    Ok(g)
}

/// Generator images of all homomorphisms `P → (Z/m)^×`, in lexicographic order.
pub fn homomorphisms_to_units(p: &FiniteGroup, m: u64) -> Vec<Vec<u64>> {
    let choices: Vec<Vec<u64>> = p
        .generators()
        .iter()
        .map(|&g| {
            let o = p.element_order(g) as u64;
            arith::units(m)
                .into_iter()
                .filter(|&u| mod_pow(u, o, m) == 1 % m)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(choices.len());
    fn rec(
        depth: usize,
        choices: &[Vec<u64>],
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        p: &FiniteGroup,
        m: u64,
    ) {
        if depth == choices.len() {
            if extend_action(p, m, current).is_ok() {
                out.push(current.clone());
            }
            return;
        }
        for &u in &choices[depth] {
            current.push(u);
            rec(depth + 1, choices, current, out, p, m);
            current.pop();
        }
    }
    rec(0, &choices, &mut current, &mut out, p, m);
    out
}
