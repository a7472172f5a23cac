use hallforge::heis::Comparison;
use hallforge::qgroup::*;
use hallforge::quiver::Quiver;
use hallforge::{GroundParams, Table};

fn table(n: usize, q: u32, bound: Vec<usize>) -> Table {
    Table::build(Quiver::linear_a(n), GroundParams::new(q).unwrap(), bound).unwrap()
}

fn assert_all(rs: &[Comparison], what: &str) {
    assert!(!rs.is_empty(), "{what}: no instances");
    let bad: Vec<_> = rs.iter().filter(|r| !r.pass).collect();
    assert!(
        bad.is_empty(),
        "{what}: {} of {} fail, first {:?}",
        bad.len(),
        rs.len(),
        bad[0]
    );
}

#[test]
fn a2_relations() {
    for q in [2, 3] {
        let t = table(2, q, vec![2, 2]);
        let sign = determine_serre_sign(&t).unwrap();
        assert_eq!(sign, SerreSign::Alternating);
        assert_all(&serre_check(&t, sign, (-1, 1)).unwrap(), "serre");
        assert_all(&adjacent_commutator_check(&t, (-2, 2)).unwrap(), "commutator");
        assert_all(&distant_and_k_checks(&t, (-1, 1), false).unwrap(), "distant");
        assert_all(&bridging_check(&t).unwrap(), "bridging");
    }
}

#[test]
fn a3_relations() {
    for q in [2, 3] {
        let small = table(3, q, vec![1, 1, 1]);
        assert_all(&adjacent_commutator_check(&small, (-2, 2)).unwrap(), "commutator");
        assert_all(&distant_and_k_checks(&small, (-1, 1), false).unwrap(), "distant");
        assert_all(&bridging_check(&small).unwrap(), "bridging");
        let t = table(3, q, vec![2, 2, 2]);
        assert_all(&serre_check(&t, SerreSign::Alternating, (-1, 1)).unwrap(), "serre");
    }
}
