use hallforge::hopf::*;
use hallforge::quiver::Quiver;
use hallforge::{GroundParams, Table, K0};

fn a2(q: u32) -> Table {
    Table::build(Quiver::linear_a(2), GroundParams::new(q).unwrap(), vec![2, 2]).unwrap()
}

fn fits(t: &Table, a: usize, b: usize) -> bool {
    let d: Vec<usize> = t.dim(a).iter().zip(t.dim(b)).map(|(x, y)| x + y).collect();
    t.in_bound(&d)
}

fn alphas(t: &Table) -> Vec<K0> {
    let n = t.n_vertices();
    let mut v = vec![K0::zero(n)];
    for i in 0..n {
        v.push(K0::unit(n, i));
        v.push(-&K0::unit(n, i));
    }
    v
}

#[test]
fn coproduct_is_multiplicative() {
    for q in [2, 3] {
        let t = a2(q);
        for a in 0..t.n_classes() {
            for b in 0..t.n_classes() {
                if !fits(&t, a, b) {
                    continue;
                }
                for al in [K0::zero(2), K0::unit(2, 1)] {
                    let x = b_basis(&t, BKey::new(al.clone(), a));
                    let y = b_obj(&t, b);
                    let lhs = coproduct(&t, &b_mul(&t, &x, &y).unwrap());
                    let rhs = tensor_mul(&t, &coproduct(&t, &x), &coproduct(&t, &y)).unwrap();
                    assert_eq!(lhs, rhs, "q={q} {} {}", t.name(a), t.name(b));
                }
            }
        }
    }
}

#[test]
fn antipode_convolution() {
    for q in [2, 3] {
        let t = a2(q);
        for a in 0..t.n_classes() {
            for al in alphas(&t) {
                let x = b_basis(&t, BKey::new(al, a));
                let d = coproduct(&t, &x);
                let eps = counit(&t, &x);
                let mut left = BElem::zero(t.ground());
                let mut right = BElem::zero(t.ground());
                for ((u, w), c) in d.iter() {
                    let su = antipode(&t, &b_basis(&t, u.clone())).unwrap();
                    let sw = antipode(&t, &b_basis(&t, w.clone())).unwrap();
                    left.add_scaled(&b_mul(&t, &su, &b_basis(&t, w.clone())).unwrap(), c);
                    right.add_scaled(&b_mul(&t, &b_basis(&t, u.clone()), &sw).unwrap(), c);
                }
                let unit = b_unit(&t).scale(&eps);
                assert_eq!(left, unit, "S*id on {}", t.name(a));
                assert_eq!(right, unit, "id*S on {}", t.name(a));
            }
        }
    }
}

#[test]
fn antipode_with_arbitrary_chain_start_fails_convolution() {
    let t = a2(2);
    let failing = (1..t.n_classes()).filter(|&a| {
        let d = coproduct(&t, &b_obj(&t, a));
        let mut left = BElem::zero(t.ground());
        for ((u, w), c) in d.iter() {
            let su = antipode_with(&t, &b_basis(&t, u.clone()), ChainStart::Any).unwrap();
            left.add_scaled(&b_mul(&t, &su, &b_basis(&t, w.clone())).unwrap(), c);
        }
        !left.is_zero()
    });
    assert!(failing.count() > 0);
}
