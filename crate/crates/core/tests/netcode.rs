use officers::affine::ag2;
use officers::designs::{grid_net, net_from_mols, validate_latin, LatinSquare, LineId, Net};
use officers::gf2::Gf2Vector;
use officers::mols_search::find_mate;
use officers::netcode::*;

/// Gaussian elimination over u128 rows, separate from the packed code.
fn naive_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        if let Some(i) = rows.iter().position(|r| r >> bit & 1 == 1) {
            let p = rows.swap_remove(i);
            for r in rows.iter_mut() {
                if *r >> bit & 1 == 1 {
                    *r ^= p;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn line_words(net: &Net) -> Vec<u128> {
    net.line_ids()
        .map(|id| net.line(id).iter().fold(0u128, |w, &p| w | 1 << p))
        .collect()
}

/// dim C and dim (C ∩ C⊥) from u128 words: the hull dimension is
/// dim C minus the rank of the Gram matrix.
fn naive_dims(net: &Net) -> (usize, usize) {
    let lines = line_words(net);
    let dim = naive_rank(lines.clone());
    let gram: Vec<u128> = lines
        .iter()
        .map(|a| {
            lines
                .iter()
                .enumerate()
                .fold(0u128, |w, (j, b)| w | (((a & b).count_ones() % 2) as u128) << j)
        })
        .collect();
    (dim, dim - naive_rank(gram))
}

fn order4_mols_net() -> Net {
    // the Klein group table, whose mate comes from the search
    let rows: Vec<Vec<usize>> = (0..4).map(|r| (0..4).map(|c| r ^ c).collect()).collect();
    let s = validate_latin(&rows).unwrap();
    let mate = find_mate(&s).unwrap();
    net_from_mols(&[s, mate]).unwrap()
}

#[test]
fn order4_net_dimensions() {
    let net = order4_mols_net();
    assert_eq!(net.num_classes(), 4);
    let code = build_code(&net);
    assert_eq!((code.code_dim(), code.hull_dim()), naive_dims(&net));
    assert_eq!(code.code_dim(), 9);
    assert_eq!(code.hull_dim(), 5);
    assert_eq!(code.code_dim(), code.hull_dim() + 4);
    assert!(code.code_dim() <= lemma_bound(4, 4).unwrap());
    assert_eq!(lemma_bound(4, 4), Ok(10));
    let r = code.report();
    assert_eq!(r.bound, Some(10));
    assert_eq!(r.class_dependency_count, 3);
}

#[test]
fn dimensions_agree_with_elimination_oracle() {
    let mut nets = vec![grid_net(3), grid_net(5), order4_mols_net()];
    for q in [2u32, 3, 4, 5, 7, 8] {
        let plane = ag2(q).unwrap();
        nets.push(plane.as_net().clone());
        nets.push(plane.to_net(&[0, 1, 2]).unwrap());
    }
    for net in &nets {
        let code = build_code(net);
        assert_eq!((code.code_dim(), code.hull_dim()), naive_dims(net), "order {}", net.order());
    }
}

#[test]
fn even_order_nets_meet_the_bound() {
    assert!(ag2(2).unwrap().to_net(&[0, 1, 2, 3]).is_err());
    for q in [4u32, 8] {
        let plane = ag2(q).unwrap();
        let net = plane.to_net(&[0, 1, 2, 3]).unwrap();
        let code = build_code(&net);
        let n = q as usize;
        assert_eq!(code.code_dim(), code.hull_dim() + 4, "order {n}");
        assert!(code.code_dim() <= lemma_bound(n, 4).unwrap());
        let reps: Vec<LineId> = (0..4).map(|c| LineId::new(c, 1 % n)).collect();
        assert_eq!(class_gram(&net, &reps).unwrap(), predicted_class_gram(n, 4));
    }
}

#[test]
fn class_relations_hold() {
    let net = grid_net(5);
    let code = build_code(&net);
    let deps = class_dependencies(&net);
    assert_eq!(deps.len(), 1);
    for d in &deps {
        assert!(code.generators().combine(d).unwrap().is_zero());
    }
    assert_eq!(code.dependency_count(), net.order() * net.num_classes() - code.code_dim());
    assert!(code.contains(&Gf2Vector::ones(25)));
}

#[test]
fn odd_order_or_wrong_k_has_no_bound() {
    assert!(lemma_bound(5, 4).is_err());
    assert!(lemma_bound(6, 3).is_err());
    assert_eq!(lemma_bound(6, 4), Ok(20));
    assert_eq!(dimension_if_only_class_relations(6, 4), 21);
    let reps = [LineId::new(0, 0), LineId::new(0, 1)];
    let net = net_from_mols(&[LatinSquare::cyclic(3)]).unwrap();
    assert!(class_gram(&net, &reps).is_err());
}
