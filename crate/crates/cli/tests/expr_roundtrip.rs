use proptest::prelude::*;

use hallforge_cli::expr::{parse, Expr, Gen, Scalar};

fn name() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("S1".to_string()),
        Just("P".to_string()),
        Just("S1^2+S2".to_string()),
        Just("V(1,1)#1".to_string()),
    ]
}

fn atom() -> impl Strategy<Value = Expr> {
    let scalar = prop_oneof![
        (0u32..1000).prop_map(|n| Scalar::Int(n.to_string())),
        (0u32..50, 1u32..50).prop_map(|(n, d)| Scalar::Frac(n.to_string(), d.to_string())),
        Just(Scalar::V),
        Just(Scalar::Q),
    ];
    let vector = prop::collection::vec(-3i64..4, 1..4);
    let gen = prop_oneof![
        (-5i64..6, name()).prop_map(|(m, n)| Gen::Z(m, n)),
        name().prop_map(Gen::Zp),
        name().prop_map(Gen::Zm),
        vector.clone().prop_map(Gen::K),
        vector.prop_map(Gen::Km),
        (-5i64..6, name()).prop_map(|(m, n)| Gen::X(m, n)),
    ];
    prop_oneof![scalar.prop_map(Expr::Scalar), gen.prop_map(Expr::Gen)]
}

/// Trees in the shape the parser produces: powers of atoms or parentheses,
/// left-nested products inside an optional negation, left-nested sums.
fn expr() -> impl Strategy<Value = Expr> {
    atom().prop_recursive(4, 32, 4, |inner| {
        let factor = prop_oneof![atom(), inner.clone().prop_map(|e| Expr::Paren(Box::new(e))),];
        let factor = (factor, prop::option::of(-3i64..4)).prop_map(|(a, p)| match p {
            Some(n) => Expr::Pow(Box::new(a), n),
            None => a,
        });
        let term = (prop::collection::vec(factor, 1..4), any::<bool>()).prop_map(|(fs, neg)| {
            let mut it = fs.into_iter();
            let first = it.next().unwrap();
            let prod = it.fold(first, |l, r| Expr::Mul(Box::new(l), Box::new(r)));
            if neg {
                Expr::Neg(Box::new(prod))
            } else {
                prod
            }
        });
        (prop::collection::vec((term, any::<bool>()), 1..4)).prop_map(|ts| {
            let mut it = ts.into_iter();
            let (first, _) = it.next().unwrap();
            it.fold(first, |l, (r, plus)| {
                if plus {
                    Expr::Add(Box::new(l), Box::new(r))
                } else {
                    Expr::Sub(Box::new(l), Box::new(r))
                }
            })
        })
    })
}

/// Surrounds every punctuation token outside object names with spaces.
fn pad(text: &str) -> String {
    let mut out = String::new();
    let mut in_name = false;
    for c in text.chars() {
        match c {
            '[' if !in_name => {
                in_name = true;
                out.push_str(" [ ");
            }
            ']' if in_name => {
                in_name = false;
                out.push_str(" ] ");
            }
            '+' | '-' | '*' | '^' | '(' | ')' | '{' | '}' | ',' | '/' if !in_name => {
                out.push(' ');
                out.push(c);
                out.push(' ');
            }
            _ => out.push(c),
        }
    }
    out
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn spacing_does_not_change_the_tree(e in expr()) {
        prop_assert_eq!(parse(&pad(&e.to_string())).unwrap(), e);
    }
}
