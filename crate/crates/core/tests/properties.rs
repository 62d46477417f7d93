//! Property tests over randomly drawn cyclotomic schemes, random point
//! relabelings and random color partitions.

use num_rational::Rational64;
use proptest::prelude::*;

use coherent::algebra::generate_algebra;
use coherent::catalog::{cayley_abelian, CatalogSpec};
use coherent::closure::{coherent_closure, coherent_closure_with_parent, one_point_extension, ColorPartition};
use coherent::equivalenced::{product_support_size, well_order};
use coherent::idempotents::constructed_idempotents;
use coherent::intmat::IntMatrix;
use coherent::io::SchemeFile;
use coherent::terwilliger::{adjacency_matrices, is_idempotent_exact, terwilliger_algebra, trivial_idempotent_exact};
use coherent::{wreath_product, CMatrix, CoherentConfiguration, Scheme, Tolerances};

const PRIMES: [usize; 9] = [5, 7, 11, 13, 17, 19, 23, 29, 31];
/// primes with `p ≡ 1 (mod 3)`, whose cubic-residue schemes are 3-equivalenced
const CUBIC_PRIMES: [usize; 5] = [7, 13, 19, 31, 37];

fn primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&g| {
            let mut x = 1;
            (1..p - 1).all(|_| {
                x = x * g % p;
                x != 1
            })
        })
        .unwrap()
}

/// Cosets of the order-`k` subgroup of `Z_p^*` as the classes of a Cayley scheme.
fn cyclotomic(p: usize, k: usize) -> Scheme {
    let g = primitive_root(p);
    let h = (0..(p - 1) / k).fold(1, |acc, _| acc * g % p);
    let subgroup: Vec<usize> = (0..k).scan(1, |x, _| {
        let cur = *x;
        *x = *x * h % p;
        Some(cur)
    }).collect();
    let mut seen = vec![false; p];
    let mut classes = Vec::new();
    for a in 1..p {
        if !seen[a] {
            let class: Vec<usize> = subgroup.iter().map(|&s| a * s % p).collect();
            class.iter().for_each(|&c| seen[c] = true);
            classes.push(class);
        }
    }
    cayley_abelian(p, &classes).unwrap()
}

fn any_cyclotomic() -> impl Strategy<Value = Scheme> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| {
        let divisors: Vec<usize> = (1..p).filter(|k| (p - 1) % k == 0).collect();
        prop::sample::select(divisors).prop_map(move |k| cyclotomic(p, k))
    })
}

/// Primes small enough that full Terwilliger algebras stay cheap.
fn small_cyclotomic() -> impl Strategy<Value = Scheme> {
    prop::sample::select(vec![5usize, 7, 11, 13]).prop_flat_map(|p| {
        let divisors: Vec<usize> = (1..p).filter(|k| (p - 1) % k == 0).collect();
        prop::sample::select(divisors).prop_map(move |k| cyclotomic(p, k))
    })
}

fn cubic() -> impl Strategy<Value = Scheme> {
    prop::sample::select(CUBIC_PRIMES.to_vec()).prop_map(|p| cyclotomic(p, 3))
}

fn catalog() -> impl Strategy<Value = Scheme> {
    prop::sample::select(vec!["point", "z2", "z4", "k4", "z5", "z7", "one_class:3", "group:3"])
        .prop_map(|s| s.parse::<CatalogSpec>().unwrap().build().unwrap())
}

fn with_permutation<S: Strategy<Value = Scheme>>(s: S) -> impl Strategy<Value = (Scheme, Vec<usize>)> {
    s.prop_flat_map(|scheme| {
        let perm = Just((0..scheme.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(scheme), perm)
    })
}

/// Dense relabeling by first appearance, so any color vector becomes valid input.
fn densify(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|c| {
            let next = map.len();
            *map.entry(*c).or_insert(next)
        })
        .collect()
}

fn partition() -> impl Strategy<Value = ColorPartition> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(0usize..3, n * n).prop_map(move |raw| ColorPartition::new(n, densify(&raw)).unwrap())
    })
}

/// `fine` refines `coarse`: every class of `fine` lies inside one class of `coarse`.
fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    let mut owner = std::collections::HashMap::new();
    fine.iter().zip(coarse).all(|(f, c)| *owner.entry(*f).or_insert(*c) == *c)
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    refines(a, b) && refines(b, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rebuilding_from_colors_reproduces_the_tensor(s in any_cyclotomic()) {
        let cc = CoherentConfiguration::from_color_matrix(s.n(), s.colors().to_vec()).unwrap();
        prop_assert_eq!(cc.tensor(), s.tensor());
    }

    #[test]
    fn json_round_trip_is_exact((s, perm) in with_permutation(any_cyclotomic())) {
        let relabeled = s.apply_point_permutation(&perm).unwrap();
        let text = SchemeFile::from_config(relabeled.config()).to_json_string();
        let back = SchemeFile::from_json_str(&text).unwrap().to_config().unwrap();
        prop_assert_eq!(&back, relabeled.config());
    }

    #[test]
    fn relabeling_points_keeps_the_tensor((s, perm) in with_permutation(any_cyclotomic())) {
        let relabeled = s.apply_point_permutation(&perm).unwrap();
        prop_assert_eq!(relabeled.tensor(), s.tensor());
        for x in 0..s.n() {
            for y in 0..s.n() {
                prop_assert_eq!(relabeled.color(perm[x], perm[y]), s.color(x, y));
            }
        }
    }

    #[test]
    fn tensor_identities_hold(s in any_cyclotomic()) {
        prop_assert_eq!(s.tensor_identity_violation(), None);
    }

    #[test]
    fn sigma_matrices_multiply_by_the_tensor(s in any_cyclotomic()) {
        let n = s.n();
        let sigma: Vec<IntMatrix> = (0..s.rank()).map(|c| s.adjacency(c)).collect();
        let total = sigma.iter().fold(IntMatrix::zeros(n), |acc, m| &acc + m);
        prop_assert_eq!(total, IntMatrix::all_ones(n));
        for a in 0..s.rank() {
            prop_assert_eq!(&sigma[s.transpose_of(a)], &sigma[a].transpose());
            for i in 0..n {
                prop_assert_eq!(sigma[a].row_sum(i), s.valency(a).unwrap() as i64);
            }
            for b in 0..s.rank() {
                let rhs = (0..s.rank()).fold(IntMatrix::zeros(n), |acc, c| {
                    &acc + &sigma[c].scale(s.intersection_number(a, b, c).unwrap() as i64)
                });
                prop_assert_eq!(&sigma[a] * &sigma[b], rhs);
            }
        }
    }

    #[test]
    fn colors_meeting_a_neighborhood_block_count_the_product_support(
        (s, u, v, x) in any_cyclotomic().prop_flat_map(|s| {
            let (r, n) = (s.rank(), s.n());
            (Just(s), 0..r, 0..r, 0..n)
        })
    ) {
        let (xu, xv) = (s.neighbors(x, u), s.neighbors(x, v));
        let mut met: Vec<usize> = xu.iter().flat_map(|&a| xv.iter().map(move |&b| (a, b))).map(|(a, b)| s.color(a, b)).collect();
        met.sort_unstable();
        met.dedup();
        prop_assert_eq!(met.len(), product_support_size(&s, u, v));
    }

    #[test]
    fn product_supports_of_cubic_schemes_have_two_or_three_colors(
        (s, u, v) in cubic().prop_flat_map(|s| {
            let r = s.rank();
            (Just(s), 1..r, 1..r)
        })
    ) {
        prop_assume!(u != s.transpose_of(v));
        let size = product_support_size(&s, u, v);
        prop_assert!(size == 2 || size == 3, "support size {}", size);
    }

    #[test]
    fn closure_is_idempotent_and_refines_its_input(p in partition()) {
        let (cc, parent) = coherent_closure_with_parent(&p);
        prop_assert!(CoherentConfiguration::from_color_matrix(cc.n(), cc.colors().to_vec()).is_ok());
        prop_assert!(refines(cc.colors(), p.colors()));
        for (cell, &c) in cc.colors().iter().enumerate() {
            prop_assert_eq!(parent[c], p.colors()[cell]);
        }
        let again = coherent_closure(&ColorPartition::from_config(&cc));
        prop_assert_eq!(again.colors(), cc.colors());
    }

    #[test]
    fn finer_input_gives_finer_closure(
        (p, extra) in partition().prop_flat_map(|p| {
            let cells = p.n() * p.n();
            (Just(p), prop::collection::vec(0usize..2, cells))
        })
    ) {
        let paired: Vec<usize> = p.colors().iter().zip(&extra).map(|(&a, &b)| 2 * a + b).collect();
        let finer = ColorPartition::new(p.n(), densify(&paired)).unwrap();
        prop_assert!(refines(
            coherent_closure(&finer).colors(),
            coherent_closure(&p).colors()
        ));
    }

    #[test]
    fn isolating_a_point_refines_the_scheme((s, x) in catalog().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), 0..n)
    })) {
        let ext = one_point_extension(&s, x).unwrap();
        prop_assert!(refines(ext.config.colors(), s.colors()));
        let base_only = coherent_closure(&ColorPartition::from_config(s.config()));
        prop_assert!(same_partition(base_only.colors(), s.colors()));
    }

    #[test]
    fn wreath_adjacency_is_a_kronecker_product(s in catalog(), t in catalog()) {
        let w = wreath_product(&s, &t);
        let iy = IntMatrix::identity(t.n());
        for c in 0..s.rank() {
            prop_assert_eq!(w.scheme().adjacency(w.tilde(c)), s.adjacency(c).kron(&iy));
        }
        let jx = IntMatrix::all_ones(s.n());
        for c in t.nontrivial_colors() {
            prop_assert_eq!(w.scheme().adjacency(w.bar(c).unwrap()), jx.kron(&t.adjacency(c)));
        }
        prop_assert_eq!(w.scheme().tensor_identity_violation(), None);
    }

    #[test]
    fn wreath_with_a_point_factor_is_isomorphic_to_the_other_factor(s in catalog()) {
        let point = "point".parse::<CatalogSpec>().unwrap().build().unwrap();
        for (w, left_is_point) in [(wreath_product(&point, &s), true), (wreath_product(&s, &point), false)] {
            let coords = |z: usize| if left_is_point { w.point(0, z) } else { w.point(z, 0) };
            let mut color_map = vec![None; w.scheme().rank()];
            for x in 0..s.n() {
                for y in 0..s.n() {
                    let c = w.scheme().color(coords(x), coords(y));
                    let expected = *color_map[c].get_or_insert(s.color(x, y));
                    prop_assert_eq!(expected, s.color(x, y));
                }
            }
            prop_assert_eq!(w.scheme().rank(), s.rank());
            prop_assert_eq!(w.scheme().tensor().rank(), s.tensor().rank());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cubic_extensions_are_semiregular_off_the_base((s, y0) in cubic().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), 0..n)
    })) {
        let rest = one_point_extension(&s, y0).unwrap().restriction_off_base().unwrap();
        prop_assert!(rest.config.is_semiregular());
    }

    #[test]
    fn well_ordering_is_stable((s, y0) in cubic().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), 0..n)
    })) {
        let w = well_order(&s, y0).unwrap();
        prop_assert_eq!(w.relabeled.tensor(), s.tensor());
        for (i, &chain) in w.chain_colors.iter().enumerate() {
            let rows = w.relabeled.neighbors(y0, w.fibers[i].color);
            let cols = w.relabeled.neighbors(y0, w.fibers[i + 1].color);
            for (a, &x) in rows.iter().enumerate() {
                for (b, &y) in cols.iter().enumerate() {
                    prop_assert_eq!(w.relabeled.color(x, y) == chain, a == b);
                }
            }
        }
        prop_assert!(well_order(&w.relabeled, y0).unwrap().is_identity());
    }

    #[test]
    fn trivial_idempotent_is_exactly_idempotent((s, x0) in any_cyclotomic().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), 0..n)
    })) {
        let e = trivial_idempotent_exact(&s, x0);
        prop_assert!(is_idempotent_exact(&e));
        let trace: Rational64 = (0..s.n()).map(|i| e[i][i]).sum();
        prop_assert_eq!(trace, Rational64::from_integer(s.rank() as i64));
    }

    #[test]
    fn adjacency_algebra_has_dimension_rank(s in any_cyclotomic()) {
        let alg = generate_algebra(&adjacency_matrices(&s)).unwrap();
        prop_assert_eq!(alg.dim(), s.rank());
        prop_assert!(alg.closure_residual() < 1e-9 * s.n() as f64);
    }

    #[test]
    fn terwilliger_algebra_sits_in_the_extension_algebra((s, x0) in small_cyclotomic().prop_flat_map(|s| {
        let n = s.n();
        (Just(s), 0..n)
    })) {
        let ctx = terwilliger_algebra(&s, x0).unwrap();
        prop_assert!(ctx.containment_residual < 1e-9);
        prop_assert!(ctx.algebra.closure_residual() < 1e-9 * s.n() as f64);
    }

    #[test]
    fn central_idempotents_are_complete_orthogonal_and_seed_independent(
        (s, seed) in small_cyclotomic().prop_flat_map(|s| (Just(s), 2u64..1000))
    ) {
        let ctx = terwilliger_algebra(&s, 0).unwrap();
        let n = s.n();
        let run = |seed| -> Vec<CMatrix> {
            ctx.algebra.central_primitive_idempotents(seed).unwrap().into_iter().map(|c| c.element).collect()
        };
        let (a, b, c) = (run(1), run(1), run(seed));
        prop_assert!(CMatrix::sum_of(n, &a).distance(&CMatrix::identity(n)) < 1e-8);
        for (i, x) in a.iter().enumerate() {
            for (j, y) in a.iter().enumerate() {
                let r = if i == j { (x * y).distance(x) } else { (x * y).frobenius_norm() };
                prop_assert!(r < 1e-8);
            }
        }
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(x.as_slice().iter().zip(y.as_slice()).all(|(p, q)| (p - q).norm() < 1e-12));
        }
        prop_assert_eq!(a.len(), c.len());
        for x in &a {
            prop_assert_eq!(c.iter().filter(|y| x.distance(y) < 1e-8).count(), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn constructed_families_do_not_depend_on_the_seed(
        (left, p, seed) in (prop::sample::select(vec!["point", "z2", "k4"]), prop::sample::select(vec![7usize, 13]), 2u64..1000)
    ) {
        let s = left.parse::<CatalogSpec>().unwrap().build().unwrap();
        let w = wreath_product(&s, &cyclotomic(p, 3));
        let a = constructed_idempotents(&w, 0, 0, 1, Tolerances::default()).unwrap();
        let b = constructed_idempotents(&w, 0, 0, seed, Tolerances::default()).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert_eq!(x.0, y.0);
            prop_assert!(x.1.distance(&y.1) < 1e-8);
        }
    }
}
