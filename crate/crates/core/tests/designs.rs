use officers::designs::*;
use officers::mols_search::find_mate;

const EULER: &str = include_str!("../../../fixtures/euler.txt");

fn names(loaded: &LoadedPair, defect: &OrthogonalityDefect) -> (Vec<String>, Vec<String>) {
    let mut dup: Vec<String> = defect.duplicated.iter().map(|d| loaded.name(d.pair)).collect();
    let mut miss: Vec<String> = defect.missing.iter().map(|&p| loaded.name(p)).collect();
    dup.sort();
    miss.sort();
    (dup, miss)
}

#[test]
fn euler_defect() {
    let loaded = parse_graeco_pair(EULER).unwrap();
    let defect = orthogonality_defect(&loaded.pair);
    let (dup, miss) = names(&loaded, &defect);
    assert_eq!(dup, ["bζ", "dε"]);
    assert_eq!(miss, ["bε", "dζ"]);
    assert!(defect.duplicated.iter().all(|d| d.count == 2));
    assert_eq!(defect.excess(), defect.missing.len());
    // brute force over all 36 x 36 cell pairs
    let (l, g) = (loaded.pair.latin(), loaded.pair.greek());
    let cells: Vec<(u8, u8)> = (0..36).map(|i| (l.get(i / 6, i % 6), g.get(i / 6, i % 6))).collect();
    let clashes = (0..36).flat_map(|i| (i + 1..36).map(move |j| (i, j))).filter(|&(i, j)| cells[i] == cells[j]).count();
    assert_eq!(clashes, 2);
}

#[test]
fn euler_latin_component_is_valid() {
    let latin: String = EULER
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(|t| t.chars().next().unwrap().to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect();
    let loaded = parse_latin_square(&latin).unwrap();
    assert_eq!(loaded.square.order(), 6);
}

#[test]
fn euler_pair_is_not_a_net() {
    let loaded = parse_graeco_pair(EULER).unwrap();
    let err = net_from_mols(&[loaded.pair.latin().clone(), loaded.pair.greek().clone()]).unwrap_err();
    assert!(matches!(err, DesignError::NotOrthogonal { .. }));
    assert!(err.is_violation());
    // the symbol lines themselves break the crossing axiom
    let mut classes = grid_net(6).classes().to_vec();
    classes.push(symbol_class(loaded.pair.latin()));
    classes.push(symbol_class(loaded.pair.greek()));
    assert!(matches!(validate_net(6, classes), Err(DesignError::BadCrossing { meets: 2, .. })));
}

#[test]
fn validation_errors() {
    assert!(validate_latin(&[vec![0, 1], vec![1, 0]]).is_ok());
    assert!(matches!(validate_latin(&[vec![0, 0], vec![1, 1]]), Err(DesignError::RowRepeat { row: 0, .. })));
    assert!(matches!(validate_latin(&[vec![0, 1], vec![0, 1]]), Err(DesignError::ColumnRepeat { col: 0, .. })));
    let out_of_range = validate_latin(&[vec![0, 2], vec![1, 0]]).unwrap_err();
    assert!(!out_of_range.is_violation());
    assert!(validate_latin(&[vec![0, 1], vec![1]]).is_err());
    assert!(validate_latin(&[]).is_err());
    assert!(parse_graeco_pair("aα b\nbβ aα\n").is_err());
}

#[test]
fn square_with_itself_is_defective() {
    for n in 2..7 {
        let s = LatinSquare::cyclic(n);
        let d = orthogonality_defect(&GraecoPair::new(s.clone(), s).unwrap());
        assert_eq!(d.duplicated.len(), n);
        assert_eq!(d.missing.len(), n * n - n);
    }
}

#[test]
fn mols_give_nets() {
    for n in [3, 4, 5, 7] {
        let s = if n == 4 {
            validate_latin(&(0..4).map(|r| (0..4).map(|c| r ^ c).collect()).collect::<Vec<_>>()).unwrap()
        } else {
            LatinSquare::cyclic(n)
        };
        let mate = find_mate(&s).unwrap();
        let net = net_from_mols(&[s.clone(), mate.clone()]).unwrap();
        assert_eq!(net.num_classes(), 4);
        assert_eq!(net.num_points(), n * n);
        // exhaustive axiom check, separate from validate_net
        for a in net.line_ids() {
            for b in net.line_ids().filter(|b| b.class > a.class) {
                let meets = net.line(a).iter().filter(|p| net.line(b).contains(p)).count();
                assert_eq!(meets, 1);
            }
        }
        let back = net.to_squares();
        assert!(are_orthogonal(&back[0], &back[1]));
        let again = parse_graeco_pairs(&format_graeco_pair(&GraecoPair::new(s.clone(), mate.clone()).unwrap())).unwrap();
        assert_eq!(again.len(), 1);
        assert_eq!(again[0].pair.latin().cells(), s.cells());
        assert_eq!(again[0].pair.greek().cells(), mate.cells());
    }
}

#[test]
fn restrict_checks_class_indices() {
    let net = grid_net(4);
    assert!(net.restrict(&[1, 0]).is_ok());
    assert!(matches!(net.restrict(&[0, 2]), Err(DesignError::NoSuchClass { class: 2, available: 2 })));
}

#[test]
fn several_pairs_round_trip() {
    let s = LatinSquare::cyclic(5);
    let mate = find_mate(&s).unwrap();
    let p = GraecoPair::new(s, mate).unwrap();
    let q = GraecoPair::new(p.greek().clone(), p.latin().clone()).unwrap();
    let text = format!("# one\n{}\n# two\n{}\n", format_graeco_pair(&p), format_graeco_pair(&q));
    let back = parse_graeco_pairs(&text).unwrap();
    assert_eq!(back.len(), 2);
    assert!(orthogonality_defect(&back[1].pair).is_empty());
}
