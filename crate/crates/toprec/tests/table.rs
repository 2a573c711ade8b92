use p5_algebra::par::Exec;
use p5_toprec::*;

#[test]
fn printed_table_mismatch_set() {
    let rows = compare_printed_table(&Store::in_memory()).unwrap();
    assert_eq!(rows.len(), 9);
    let status = |g, n| rows.iter().find(|r| r.g == g && r.n == n).unwrap();
    for (g, n) in [(2, 1), (3, 1), (1, 3), (1, 4), (1, 5)] {
        assert_eq!(status(g, n).status, TableStatus::Match, "W_{n}^({g})");
    }
    assert_eq!(status(1, 2).status, TableStatus::Unreadable);
    for (g, n) in [(1, 1), (4, 1), (5, 1)] {
        assert_eq!(status(g, n).status, TableStatus::Mismatch, "W_{n}^({g})");
    }
    assert_eq!(status(1, 1).quotient.as_deref(), Some("(-1)"));
    assert!(status(4, 1).quotient.as_deref().unwrap().contains("z^2"));
}

#[test]
fn two_point_genus_one_with_unit_numerator() {
    assert_eq!(*Store::in_memory().tensor(1, 2).unwrap(), w2_1_unit_numerator());
}

#[test]
fn eynard_orantin_flips_odd_n() {
    let eo = Store::with_convention(Convention::EynardOrantin, Exec::Sequential, None);
    let rows = compare_printed_table(&eo).unwrap();
    let st = |g, n| rows.iter().find(|r| r.g == g && r.n == n).unwrap().status;
    assert_eq!(st(1, 1), TableStatus::Match);
    assert_eq!(st(1, 3), TableStatus::Mismatch);
    assert_eq!(st(2, 1), TableStatus::Mismatch);
}
