//! Constant-term checks against an expansion oracle that picks one summand
//! from each of the 6n binomials independently (2^(6n) products), sharing
//! no code with the incremental merge.

use std::collections::BTreeMap;

use cycletri::laurent::{
    build_phi, ct_by_expansion, ct_by_grid, default_grid_values, evaluate_phi, expand, grid_weights, GridSpec,
};
use cycletri::{BigInt, BigRational, CycleTrianglesInstance, SeededRng};
use num_traits::{One, Zero};

fn brute_force_expansion(inst: &CycleTrianglesInstance) -> BTreeMap<Vec<i32>, i64> {
    let m = inst.vertex_count();
    let mut pairs: Vec<(usize, usize)> = (0..m).map(|i| ((i + 1) % m, i)).collect();
    for &[a, b, c] in inst.triangles() {
        pairs.extend([(a, b), (b, c), (c, a)]);
    }
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let mut exps = vec![0i32; m];
        let mut sign = 1i64;
        for (k, &(up, down)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                exps[up] += 1;
                exps[down] -= 1;
                sign = -sign;
            }
        }
        *out.entry(exps).or_insert(0) += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn one_triangle() -> CycleTrianglesInstance {
    CycleTrianglesInstance::new(1, vec![[0, 1, 2]]).unwrap()
}

fn two_triangles() -> CycleTrianglesInstance {
    CycleTrianglesInstance::new(2, vec![[0, 2, 4], [1, 3, 5]]).unwrap()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn oracle_values_frozen() {
    // Computed by brute_force_expansion and independently with sympy.
    let one = brute_force_expansion(&one_triangle());
    assert_eq!(one.get(&vec![0, 0, 0]), Some(&6));
    assert_eq!(one.len(), 19);
    let two = brute_force_expansion(&two_triangles());
    assert_eq!(two.get(&vec![0; 6]), Some(&6));
    assert_eq!(two.len(), 865);
}

#[test]
fn expansion_matches_brute_force() {
    let mut instances = vec![one_triangle(), two_triangles()];
    instances.extend((0..6).map(|s| CycleTrianglesInstance::random(2, s)));
    for inst in instances {
        let oracle = brute_force_expansion(&inst);
        let p = expand(&build_phi(&inst)).unwrap();
        let got: BTreeMap<Vec<i32>, i64> = p
            .terms()
            .into_iter()
            .map(|(e, c)| (e.into_iter().map(i32::from).collect(), i64::try_from(c).unwrap()))
            .collect();
        assert_eq!(got, oracle, "{:?}", inst.triangles());
    }
}

#[test]
fn single_triangle_is_minus_square() {
    // Φ = -P² with P = (x2/x0 + x0/x1 + x1/x2) - (x2/x1 + x1/x0 + x0/x2)
    let p: Vec<(Vec<i32>, i64)> = vec![
        (vec![-1, 0, 1], 1),
        (vec![1, -1, 0], 1),
        (vec![0, 1, -1], 1),
        (vec![0, -1, 1], -1),
        (vec![-1, 1, 0], -1),
        (vec![1, 0, -1], -1),
    ];
    let mut square = BTreeMap::new();
    for (e1, c1) in &p {
        for (e2, c2) in &p {
            let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            *square.entry(e).or_insert(0i64) -= c1 * c2;
        }
    }
    square.retain(|_, c| *c != 0);
    assert_eq!(square, brute_force_expansion(&one_triangle()));
}

#[test]
fn expanded_terms_shape() {
    for seed in 0..5 {
        let inst = CycleTrianglesInstance::random(3, seed);
        let p = expand(&build_phi(&inst)).unwrap();
        for (e, _) in p.terms() {
            assert_eq!(e.iter().map(|&x| x as i32).sum::<i32>(), 0);
            assert!(e.iter().all(|x| (-2..=2).contains(x)));
            if e.iter().any(|&x| x != 0) {
                assert!(e.iter().any(|&x| x == 1 || x == 2), "{e:?}");
            }
        }
    }
}

#[test]
fn grid_annihilates_every_nonconstant_monomial() {
    let inst = one_triangle();
    let p = expand(&build_phi(&inst)).unwrap();
    let mut rng = SeededRng::new(5);
    let grids = [
        GridSpec::uniform(default_grid_values(), 3).unwrap(),
        GridSpec::random_per_vertex(3, &mut rng),
    ];
    for grid in &grids {
        let w: Vec<_> = grid.sets().iter().map(|s| grid_weights(s).unwrap()).collect();
        for (e, _) in p.terms() {
            let mut sum = BigRational::zero();
            for a in 0..3 {
                for b in 0..3 {
                    for c in 0..3 {
                        let idx = [a, b, c];
                        let mut t = BigRational::one();
                        for v in 0..3 {
                            let x = &w[v].values[idx[v]];
                            t *= &w[v].weights[idx[v]] * num_traits::Pow::pow(x, e[v] as i32);
                        }
                        sum += t;
                    }
                }
            }
            let expected = if e.iter().all(|&x| x == 0) { BigRational::one() } else { BigRational::zero() };
            assert_eq!(sum, expected, "{e:?}");
        }
    }
}

#[test]
fn evaluation_matches_expansion() {
    let mut rng = SeededRng::new(77);
    for inst in [one_triangle(), two_triangles(), CycleTrianglesInstance::random(2, 3)] {
        let p = expand(&build_phi(&inst)).unwrap();
        for _ in 0..5 {
            let point: Vec<BigRational> = (0..inst.vertex_count()).map(|_| rng.nonzero_rational()).collect();
            assert_eq!(evaluate_phi(&inst, &point).unwrap(), p.evaluate(&point).unwrap());
        }
    }
}

#[test]
fn grid_equals_expansion_on_many_grids() {
    let mut rng = SeededRng::new(2024);
    let mut instances = vec![one_triangle(), two_triangles()];
    instances.extend((0..4).map(|s| CycleTrianglesInstance::random(2 + (s as usize % 2), s)));
    for inst in instances {
        let ct = BigRational::from_integer(ct_by_expansion(&inst).unwrap());
        let m = inst.vertex_count();
        let grids = [
            GridSpec::uniform(default_grid_values(), m).unwrap(),
            GridSpec::random_uniform(m, &mut rng),
            GridSpec::random_per_vertex(m, &mut rng),
            GridSpec::random_per_vertex(m, &mut rng),
        ];
        for g in &grids {
            assert_eq!(ct_by_grid(&inst, g).unwrap(), ct);
        }
    }
}

#[test]
fn ct_congruent_two_mod_four() {
    let four = BigInt::from(4);
    for n in 1..=3 {
        for seed in 0..8 {
            let ct = ct_by_expansion(&CycleTrianglesInstance::random(n, seed)).unwrap();
            assert_eq!(((ct % &four) + &four) % &four, BigInt::from(2));
        }
    }
}

#[test]
fn ct_invariant_under_relabelling() {
    let inst = two_triangles();
    let base = ct_by_expansion(&inst).unwrap();
    // this partition is symmetric under j -> j + 3
    assert_eq!(ct_by_expansion(&inst.rotated(3)).unwrap(), base);
    for seed in 0..6 {
        let inst = CycleTrianglesInstance::random(3, seed);
        let base = ct_by_expansion(&inst).unwrap();
        assert_eq!(ct_by_expansion(&inst.rotated(1 + seed as usize)).unwrap(), base);

        // a cyclic shift of a triple keeps its bracket
        let mut tris = inst.triangles().to_vec();
        tris[1].rotate_left(1);
        let shifted = CycleTrianglesInstance::new(3, tris.clone()).unwrap();
        assert_eq!(ct_by_expansion(&shifted).unwrap(), base);

        // a transposition negates the bracket and hence the constant term
        tris[0].swap(0, 1);
        let swapped = CycleTrianglesInstance::new(3, tris).unwrap();
        assert_eq!(ct_by_expansion(&swapped).unwrap(), -base);
    }
}

#[test]
fn mixed_lists_give_same_grid_value() {
    let inst = two_triangles();
    let sets = (0..6)
        .map(|v| if v % 2 == 0 { [int(1), int(2), int(3)] } else { [int(4), int(5), int(6)] })
        .collect();
    let grid = GridSpec::new(sets).unwrap();
    assert_eq!(ct_by_grid(&inst, &grid).unwrap(), int(6));
}

fn pointwise_grid_sum(inst: &CycleTrianglesInstance, grid: &GridSpec) -> BigRational {
    let sets: Vec<_> = grid.sets().iter().map(|s| grid_weights(s).unwrap()).collect();
    let m = sets.len();
    let mut total = BigRational::zero();
    for code in 0..3usize.pow(m as u32) {
        let mut c = code;
        let mut point = Vec::with_capacity(m);
        let mut weight = BigRational::one();
        for set in &sets {
            point.push(set.values[c % 3].clone());
            weight *= &set.weights[c % 3];
            c /= 3;
        }
        total += evaluate_phi(inst, &point).unwrap() * weight;
    }
    total
}

#[test]
fn integer_walk_matches_pointwise_sum() {
    let mut rng = SeededRng::new(77);
    for inst in [one_triangle(), two_triangles(), CycleTrianglesInstance::random(2, 5)] {
        let m = inst.vertex_count();
        for g in [
            GridSpec::random_uniform(m, &mut rng),
            GridSpec::random_per_vertex(m, &mut rng),
            GridSpec::random_per_vertex(m, &mut rng),
        ] {
            assert_eq!(ct_by_grid(&inst, &g).unwrap(), pointwise_grid_sum(&inst, &g));
        }
    }
}
