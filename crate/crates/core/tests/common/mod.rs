#![allow(dead_code)]

use gradfrob::algebra::GradedAlgebra;
use gradfrob::constructors::{
    make_aq, make_exterior, make_good_matrix, make_twisted_group_algebra, truncated_polynomial, upper_triangular,
    with_trivial_grading, AqGrading, GoodGradingSpec, QMatrix,
};
use gradfrob::exactmath::{int, Rational};
use gradfrob::group::{GroupModel, GroupValue};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p` in `[-9, 9] \ {0}`, `q` in `[1, 9]`.
pub fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let p = loop {
        let p: i64 = rng.gen_range(-9..=9);
        if p != 0 {
            break p;
        }
    };
    Rational::new(p.into(), rng.gen_range(1i64..=9).into())
}

pub fn random_q(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| random_nonzero(rng)).unwrap()
}

/// S3 written in the table grammar, permutations composed as functions.
pub fn s3() -> GroupModel {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let names = ["e", "s1", "s2", "s3", "r", "r2"];
    let rows: Vec<String> = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let c = [p[q[0]], p[q[1]], p[q[2]]];
                    names[perms.iter().position(|x| *x == c).unwrap()]
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("table{{{} | {}}}", names.join(","), rows.join("; ")).parse().unwrap()
}

/// Every finite group model of order at most 8 used by the tests.
pub fn small_groups() -> Vec<GroupModel> {
    let mut gs: Vec<GroupModel> = (1..=8).map(|n| GroupModel::cyclic(n).unwrap()).collect();
    gs.extend((1..=3).map(|n| GroupModel::boolean_vectors(n).unwrap()));
    gs.push(s3());
    gs.push("product(Z/2,Z/4)".parse().unwrap());
    gs
}

fn index_of(model: &GroupModel, g: &GroupValue) -> usize {
    model.elements().unwrap().iter().position(|x| x == g).unwrap()
}

/// Twisted group algebras over `model`: the trivial cocycle, a coboundary, and
/// a sign bicharacter when the group is abelian of even order.
pub fn twisted_family(model: &GroupModel) -> Vec<(String, GradedAlgebra)> {
    let mut out = vec![(format!("K[{model}]"), make_twisted_group_algebra(model, |_, _| Rational::one()).unwrap())];
    let f = |g: &GroupValue| int(index_of(model, g) as i64 + 1);
    let cob = make_twisted_group_algebra(model, |g, h| f(g) * f(h) / f(&model.compose(g, h).unwrap())).unwrap();
    out.push((format!("K^coboundary[{model}]"), cob));
    let sign = |x: bool| if x { int(-1) } else { int(1) };
    match model {
        GroupModel::BooleanVectors(n) if *n >= 2 => {
            let c = make_twisted_group_algebra(model, |g, h| match (g, h) {
                (GroupValue::Bits(a), GroupValue::Bits(b)) => sign(a[0] && b[1]),
                _ => unreachable!(),
            })
            .unwrap();
            out.push((format!("K^bichar[{model}]"), c));
        }
        GroupModel::Product(_) => {
            let c = make_twisted_group_algebra(model, |g, h| match (g, h) {
                (GroupValue::Tuple(a), GroupValue::Tuple(b)) => {
                    let odd = |v: &GroupValue| matches!(v, GroupValue::Residue(x) if x % 2 == 1);
                    sign(odd(&a[0]) && odd(&b[1]))
                }
                _ => unreachable!(),
            })
            .unwrap();
            out.push((format!("K^bichar[{model}]"), c));
        }
        _ => {}
    }
    out
}

pub fn good_tuple(rng: &mut ChaCha8Rng, model: &GroupModel, n: usize) -> Vec<GroupValue> {
    let elems = model.elements().unwrap();
    (0..n).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect()
}

/// The shared test corpus, with labels.
pub fn corpus() -> Vec<(String, GradedAlgebra)> {
    let mut out = Vec::new();
    let mut r = rng(2024);
    for n in 2..=3 {
        for k in 0..3 {
            let q = random_q(&mut r, n);
            for (tag, grading) in
                [("Z2^n", AqGrading::BooleanVectors), ("Z", AqGrading::Integer), ("trivial", AqGrading::Trivial)]
            {
                out.push((format!("A(q) n={n} #{k} {tag}"), make_aq(&q, grading)));
            }
        }
    }
    for k in 0..2 {
        let q = random_q(&mut r, 4);
        out.push((format!("A(q) n=4 #{k} Z"), make_aq(&q, AqGrading::Integer)));
        out.push((format!("A(q) n=4 #{k} Z2^n"), make_aq(&q, AqGrading::BooleanVectors)));
    }
    for n in 2..=5 {
        out.push((format!("exterior n={n}"), make_exterior(n, AqGrading::Trivial).unwrap()));
    }
    for group in ["Z/2", "Z/3", "Z/4"] {
        let model: GroupModel = group.parse().unwrap();
        for n in 2..=3 {
            for k in 0..2 {
                let tuple = good_tuple(&mut r, &model, n);
                let spec = GoodGradingSpec::new(model.clone(), tuple).unwrap();
                out.push((format!("M{n} over {group} #{k}"), make_good_matrix(&spec)));
            }
        }
    }
    let s3 = s3();
    let tuple: Vec<GroupValue> = ["e", "s1", "r"].iter().map(|x| s3.parse_element(x).unwrap()).collect();
    out.push(("M3 over S3".into(), make_good_matrix(&GoodGradingSpec::new(s3, tuple).unwrap())));
    for model in small_groups() {
        out.extend(twisted_family(&model));
    }
    for n in 1..=5 {
        out.push((format!("K[x]/(x^{n})"), with_trivial_grading(truncated_polynomial(n).unwrap()).unwrap()));
    }
    out.push(("upper triangular 2x2".into(), with_trivial_grading(upper_triangular(2).unwrap()).unwrap()));
    out
}

/// Random `α` vector, zero entries allowed.
pub fn random_alpha(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| int(rng.gen_range(-3..=3))).collect()
}
