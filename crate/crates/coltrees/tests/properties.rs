use coltrees::*;
use num_bigint::BigUint;
use proptest::prelude::*;

/// Plane tree in preorder: each new vertex hangs off some vertex on the
/// current rightmost path, which reaches every plane tree.
fn plane_tree(max: usize) -> impl Strategy<Value = PlaneTree> {
    prop::collection::vec(any::<u16>(), 0..max).prop_map(|picks| {
        let mut parents = vec![None];
        let mut spine = vec![0usize];
        for (v, pick) in picks.into_iter().enumerate() {
            let k = pick as usize % spine.len();
            spine.truncate(k + 1);
            parents.push(Some(spine[k]));
            spine.push(v + 1);
        }
        PlaneTree::from_parents(&parents).unwrap()
    })
}

fn matrix(max_m: usize) -> impl Strategy<Value = ColoringMatrix> {
    (1..=max_m).prop_flat_map(|m| (0..(1u64 << (m * m))).prop_map(move |c| ColoringMatrix::from_code(m, c)))
}

fn matrix_with_perm(max_m: usize) -> impl Strategy<Value = (ColoringMatrix, ColorPermutation)> {
    matrix(max_m).prop_flat_map(|a| {
        let m = a.size();
        let imgs: Vec<usize> = (1..=m).collect();
        (Just(a), Just(imgs).prop_shuffle())
            .prop_map(|(a, imgs)| (a, ColorPermutation::from_images(&imgs).unwrap()))
    })
}

/// Colors a shape greedily: `choose(parent_color)` lists allowed child colors.
fn colored(shape: PlaneTree, root: usize, bits: &[bool], choose: impl Fn(usize) -> Vec<usize>) -> ColoredTree {
    let parents = shape.parents();
    let mut colors = vec![root];
    for v in 1..parents.len() {
        let opts = choose(colors[parents[v].unwrap()]);
        colors.push(opts[bits[v % bits.len()] as usize % opts.len()]);
    }
    ColoredTree::new(shape, colors).unwrap()
}

fn sorted_rows(t: &SequenceTable) -> Vec<Vec<BigUint>> {
    let mut v = t.per_color.clone();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn glove_round_trip(t in plane_tree(14)) {
        let p = glove(&t);
        prop_assert_eq!(p.semilength(), t.size() - 1);
        prop_assert_eq!(unglove(&p), t);
    }

    #[test]
    fn canonical_form_is_permutation_invariant((a, p) in matrix_with_perm(4)) {
        let b = apply_permutation(&a, &p).unwrap();
        prop_assert_eq!(canonical_form(&a).0, canonical_form(&b).0);
        let canon = Canonizer::new(a.size());
        prop_assert_eq!(canon.canonical_code(&a).0, canon.canonical_code(&b).0);
    }

    #[test]
    fn counts_follow_color_relabeling((a, p) in matrix_with_perm(3)) {
        let b = apply_permutation(&a, &p).unwrap();
        let (ta, tb) = (count_by_root(&a, 9).unwrap(), count_by_root(&b, 9).unwrap());
        prop_assert_eq!(&ta.total, &tb.total);
        for i in 1..=a.size() {
            prop_assert_eq!(ta.color(i), tb.color(p.apply(i)));
        }
        prop_assert!(strongly_equivalent(&a, &b, 9).unwrap().is_equal());
    }

    #[test]
    fn rewrite_moves_keep_per_color_counts(a in matrix(4)) {
        let depth = 9;
        let ta = count_by_root(&a, depth).unwrap();
        for mv in find_rewrites(&a, depth).unwrap() {
            let b = apply_rewrite(&a, &mv).unwrap();
            let tb = count_by_root(&b, depth).unwrap();
            prop_assert_eq!(&ta.per_color, &tb.per_color, "move {}", mv);
        }
    }

    #[test]
    fn recurrence_agrees_with_series_system(a in matrix(3)) {
        let order = 10;
        let t = count_by_root(&a, order).unwrap();
        let sys = solve_system(&a, order).unwrap();
        for i in 1..=a.size() {
            let s = series_from_counts(&t, SeriesSelector::Color(i)).unwrap();
            for k in 0..order {
                prop_assert_eq!(s.coeff(k), sys[i - 1].coeff(k), "color {} coefficient {}", i, k);
            }
        }
    }

    #[test]
    fn invariants_match_small_counts(a in matrix(4)) {
        let inv = necessary_invariants(&a);
        let t = count_by_root(&a, 3).unwrap();
        prop_assert_eq!(BigUint::from(inv.ones_total), t.total[1].clone());
        prop_assert_eq!(BigUint::from(inv.three_vertex_sum), t.total[2].clone());
    }

    #[test]
    fn tau_round_trip(shape in plane_tree(10), root in 1usize..=2, bits in prop::collection::vec(any::<bool>(), 1..16)) {
        // 11;10: white (2) takes only blue (1) children
        let t = colored(shape, root, &bits, |c| if c == 1 { vec![1, 2] } else { vec![1] });
        prop_assert!(t.is_valid(&"11;10".parse().unwrap()));
        let u = tau(&t).unwrap();
        prop_assert_eq!(u.size(), 2 * t.size() - usize::from(root == 2));
        prop_assert!(all_downward_even(&u));
        prop_assert_eq!(tau_inv(&u).unwrap(), t);
    }

    #[test]
    fn root3_round_trip(shape in plane_tree(9), bits in prop::collection::vec(any::<bool>(), 1..16)) {
        let t = colored(shape, 3, &bits, |c| match c { 1 => vec![1, 2], 2 => vec![1], _ => vec![2] });
        let p = root3_path(&t).unwrap();
        prop_assert_eq!(p.semilength(), 2 * t.size() - 2);
        prop_assert!(is_root3_path(&p));
        prop_assert_eq!(root3_path_inv(&p).unwrap(), t);
    }

    #[test]
    fn equivalence_filters_agree_with_counts(a in matrix(3), b in matrix(3)) {
        prop_assume!(a.size() == b.size());
        let v = tree_coloring_equivalent(&a, &b, 6).unwrap();
        let (ta, tb) = (count_by_root(&a, 6).unwrap(), count_by_root(&b, 6).unwrap());
        match v.verdict {
            Verdict::FilteredByInvariant(_) => prop_assert_ne!(&ta.total[..3], &tb.total[..3]),
            Verdict::DistinguishedAt(n) => {
                prop_assert_eq!(&ta.total[..n - 1], &tb.total[..n - 1]);
                prop_assert_ne!(&ta.total[n - 1], &tb.total[n - 1]);
            }
            Verdict::EqualToDepth => prop_assert_eq!(&ta.total, &tb.total),
        }
        let s = strongly_equivalent(&a, &b, 6).unwrap();
        if s.is_equal() {
            prop_assert_eq!(sorted_rows(&ta), sorted_rows(&tb));
            prop_assert!(v.is_equal());
        }
    }

    #[test]
    fn decimal_strings_round_trip(words in prop::collection::vec(prop::collection::vec(any::<u32>(), 0..6), 0..8)) {
        let seq = DecimalSeq(words.iter().map(|w| BigUint::new(w.clone())).collect());
        let text = serde_json::to_string(&seq).unwrap();
        prop_assert_eq!(serde_json::from_str::<DecimalSeq>(&text).unwrap(), seq);
    }
}
