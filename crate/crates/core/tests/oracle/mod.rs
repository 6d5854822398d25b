//! Gröbner bases and Hilbert series against naive recomputations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use mfk_core::module::PresentedModule;
use mfk_core::ring::{Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use mfk_core::Q;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Exps = Vec<u32>;
type Naive = BTreeMap<Exps, Q>;

fn cmp(order: MonomialOrder, weights: &[u32], a: &Exps, b: &Exps) -> Ordering {
    match order {
        MonomialOrder::Lex => a.cmp(b),
        _ => {
            let wd = |e: &Exps| e.iter().zip(weights).map(|(&x, &w)| u64::from(x) * u64::from(w)).sum::<u64>();
            let td = |e: &Exps| e.iter().map(|&x| u64::from(x)).sum::<u64>();
            wd(a).cmp(&wd(b)).then(td(a).cmp(&td(b))).then_with(|| {
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            })
        }
    }
}

fn lead(order: MonomialOrder, weights: &[u32], f: &Naive) -> Option<(Exps, Q)> {
    f.iter().max_by(|a, b| cmp(order, weights, a.0, b.0)).map(|(e, c)| (e.clone(), c.clone()))
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn add_scaled(f: &mut Naive, g: &Naive, shift: &Exps, c: &Q) {
    for (e, gc) in g {
        let key: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = f.remove(&key).unwrap_or_else(Q::zero) + c * gc;
        if !v.is_zero() {
            f.insert(key, v);
        }
    }
}

/// Full multivariate division; returns the remainder.
fn remainder(order: MonomialOrder, weights: &[u32], f: &Naive, divisors: &[Naive]) -> Naive {
    let mut p = f.clone();
    let mut r = Naive::new();
    while let Some((e, c)) = lead(order, weights, &p) {
        let hit = divisors.iter().find_map(|g| {
            let (ge, gc) = lead(order, weights, g)?;
            divides(&ge, &e).then_some((g, ge, gc))
        });
        match hit {
            Some((g, ge, gc)) => {
                let shift: Exps = e.iter().zip(&ge).map(|(a, b)| a - b).collect();
                add_scaled(&mut p, g, &shift, &(-(c / gc)));
            }
            None => {
                p.remove(&e);
                r.insert(e, c);
            }
        }
    }
    r
}

fn s_poly(order: MonomialOrder, weights: &[u32], f: &Naive, g: &Naive) -> Naive {
    let (fe, fc) = lead(order, weights, f).unwrap();
    let (ge, gc) = lead(order, weights, g).unwrap();
    let l: Exps = fe.iter().zip(&ge).map(|(a, b)| *a.max(b)).collect();
    let mut s = Naive::new();
    add_scaled(&mut s, f, &l.iter().zip(&fe).map(|(a, b)| a - b).collect(), &(Q::one() / fc));
    add_scaled(&mut s, g, &l.iter().zip(&ge).map(|(a, b)| a - b).collect(), &(-(Q::one() / gc)));
    s
}

fn to_naive(f: &Polynomial<Q>) -> Naive {
    f.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect()
}

fn from_naive(ring: &Ring, f: &Naive) -> Polynomial<Q> {
    Polynomial::from_terms(ring, f.iter().map(|(e, c)| (Monomial::from_exponents(e), c.clone())).collect())
}

fn monomials_of_degree(weights: &[u32], d: i64) -> Vec<Exps> {
    fn go(weights: &[u32], i: usize, left: i64, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i64::from(weights[i]);
        let mut e = 0;
        while e * w <= left {
            cur[i] = e as u32;
            go(weights, i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if d >= 0 {
        go(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    }
    out
}

fn random_homogeneous(rng: &mut ChaCha8Rng, weights: &[u32], d: i64, terms: usize) -> Naive {
    let mons = monomials_of_degree(weights, d);
    let mut f = Naive::new();
    if mons.is_empty() {
        return f;
    }
    for _ in 0..terms {
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            f.insert(mons[rng.gen_range(0..mons.len())].clone(), Q::from_integer(c.into()));
        }
    }
    f
}

/// Checks Buchberger's criterion on `count` random ideals; returns how many were checked.
pub fn groebner_criterion(seed: u64, count: usize) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for k in 0..count {
        let order = if k % 4 == 3 { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
        let n = rng.gen_range(2..=3);
        let names: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let weights = vec![1u32; n];
        let ring = PolyRing::new(&names, &weights, order).unwrap();
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Naive> = (0..ngens)
            .map(|_| {
                let mut f = Naive::new();
                for d in 0..=rng.gen_range(1..=3) {
                    if rng.gen_bool(0.6) {
                        add_scaled(&mut f, &random_homogeneous(&mut rng, &weights, d, 2), &vec![0; n], &Q::one());
                    }
                }
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = Ideal::new(&ring, gens.iter().map(|g| from_naive(&ring, g)).collect()).unwrap();
        let gb: Vec<Naive> = ideal.groebner_basis().iter().map(to_naive).collect();
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                let s = s_poly(order, &weights, &gb[i], &gb[j]);
                if !remainder(order, &weights, &s, &gb).is_empty() {
                    return Err(format!("instance {k}: S({i},{j}) does not reduce"));
                }
            }
        }
        for g in &gens {
            if !remainder(order, &weights, g, &gb).is_empty() {
                return Err(format!("instance {k}: generator not in the basis ideal"));
            }
        }
        checked += 1;
    }
    Ok(checked)
}

/// Dimension of the degree-`d` part of `coker(relations)` by linear algebra.
fn brute_force_dimension(weights: &[u32], twists: &[i64], relations: &[Vec<Naive>], d: i64) -> usize {
    let mut index = BTreeMap::new();
    for (i, &a) in twists.iter().enumerate() {
        for m in monomials_of_degree(weights, d - a) {
            let next = index.len();
            index.insert((i, m), next);
        }
    }
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for v in relations {
        let deg = v.iter().zip(twists).find_map(|(p, a)| {
            p.keys().next().map(|e| e.iter().zip(weights).map(|(&x, &w)| i64::from(x * w)).sum::<i64>() + a)
        });
        let Some(deg) = deg else { continue };
        for shift in monomials_of_degree(weights, d - deg) {
            let mut row = vec![Q::zero(); index.len()];
            for (i, p) in v.iter().enumerate() {
                for (e, c) in p {
                    let key: Exps = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                    row[index[&(i, key)]] += c;
                }
            }
            rows.push(row);
        }
    }
    index.len() - rank(rows)
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone() / &pivot;
                for j in c..cols {
                    let v = rows[r][j].clone() * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Compares Hilbert series with graded dimensions up to `top` on `count` random modules.
pub fn hilbert_dimensions(seed: u64, count: usize, top: i64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let n = rng.gen_range(1..=3);
        let names: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let weights: Vec<u32> = if k % 3 == 2 { (0..n).map(|i| 1 + (i as u32 % 2)).collect() } else { vec![1; n] };
        let ring = PolyRing::new(&names, &weights, MonomialOrder::DegRevLex).unwrap();
        let rank = rng.gen_range(1..=2);
        let twists: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
        let nrel = rng.gen_range(0..=3);
        let relations: Vec<Vec<Naive>> = (0..nrel)
            .map(|_| {
                let e = rng.gen_range(1..=3);
                twists.iter().map(|&a| random_homogeneous(&mut rng, &weights, e - a, 2)).collect::<Vec<_>>()
            })
            .filter(|v: &Vec<Naive>| v.iter().any(|p| !p.is_empty()))
            .collect();
        let rels = relations.iter().map(|v| v.iter().map(|p| from_naive(&ring, p)).collect()).collect();
        let m = PresentedModule::cokernel(&ring, twists.clone(), rels).unwrap();
        let series = m.hilbert_series().map_err(|e| e.to_string())?.coefficients(0, top);
        for d in 0..=top {
            let expected = BigInt::from(brute_force_dimension(&weights, &twists, &relations, d));
            if series[d as usize] != expected || series[d as usize].is_negative() {
                return Err(format!("module {k}, degree {d}: series gives {}, expected {expected}", series[d as usize]));
            }
        }
    }
    Ok(count)
}
