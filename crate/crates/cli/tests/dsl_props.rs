use std::sync::Arc;

use hetcat::{CategoryBuilder, FinCategory, HetBifunctor};
use hetcat_cli::parser::parse_blocks;
use hetcat_cli::serialize::{isomorphic_workspaces, to_dsl};
use hetcat_cli::Workspace;
use proptest::prelude::*;

/// Thin category of the preorder generated by `edges` on `names`.
fn poset(names: &[String], edges: &[(usize, usize)]) -> FinCategory {
    let n = names.len();
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
    }
    for &(i, j) in edges {
        let (i, j) = (i % n, j % n);
        if i < j {
            le[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut cb = CategoryBuilder::new("P o");
    let objs: Vec<_> = names.iter().map(|s| cb.add_object(s.clone())).collect();
    let mut mor = vec![vec![None; n]; n];
    for i in 0..n {
        mor[i][i] = Some(cb.add_identity(objs[i]));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                mor[i][j] = Some(cb.add_morphism(format!("m{i}_{j}"), objs[i], objs[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if let (Some(f), Some(g), Some(h)) = (mor[i][j], mor[j][k], mor[i][k]) {
                    cb.set_compose(g, f, h);
                }
            }
        }
    }
    cb.build().expect("preorders are categories")
}

fn names() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[a-z(\\[][a-z0-9_ .,#\"\\\\-]{0,5}", 1..5).prop_map(|v| {
        v.into_iter().enumerate().map(|(i, s)| format!("{s}{i}")).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn preorders_round_trip(names in names(), edges in prop::collection::vec((0usize..5, 0usize..5), 0..8)) {
        let cat = Arc::new(poset(&names, &edges));
        let hom = Arc::new(HetBifunctor::hom(&cat).renamed("Hom"));
        let mut ws = Workspace::new();
        ws.add_category(&cat).unwrap();
        ws.add_het(&hom).unwrap();
        let text = to_dsl(&ws).unwrap();
        let back = Workspace::parse(&[("p.hc", text.as_str())]).unwrap();
        prop_assert!(back.validation_errors().is_empty(), "{}", text);
        prop_assert!(isomorphic_workspaces(&ws, &back), "{}", text);
        prop_assert_eq!(to_dsl(&back).unwrap(), text);
    }

    #[test]
    fn parser_never_panics(text in "[a-z{}();:,.=*#\"\\[\\] \n~>-]{0,80}") {
        let _ = parse_blocks(&text, "fuzz.hc");
    }
}
