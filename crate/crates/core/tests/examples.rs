use std::path::PathBuf;

use oretel_core::arith::{FieldSpec, RatFunc, Y};
use oretel_core::expr::{format_operator, parse_operator};
use oretel_core::ore::OreOperator;
use oretel_core::properness::{compute_eta, compute_height, is_y_proper, properness_report};
use oretel_core::sysfile::read_system;
use oretel_core::system::DFiniteSystem;
use oretel_core::telescope::{bounds, telescope, verify_pair, TelescopeOptions};

fn load(name: &str) -> DFiniteSystem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../systems").join(name);
    read_system(&path).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn opts(phi: Option<u32>) -> TelescopeOptions {
    TelescopeOptions { phi_override: phi, ..TelescopeOptions::default() }
}

#[test]
fn differential_example() {
    let sys = load("diff_example.sys");
    assert_eq!(compute_eta(&sys).unwrap(), 0);
    assert_eq!(compute_height(&sys).unwrap(), 1);
    assert_eq!(bounds(&sys, Some(0)).unwrap().order_bound, 2);
    let pair = telescope(&sys, &opts(Some(0))).unwrap();
    assert_eq!(pair.telescoper.ord_x(), Some(2));
    assert!(verify_pair(&sys, &pair.telescoper, &pair.certificate));
}

#[test]
fn gamma_examples() {
    let sys = load("gamma_xy.sys");
    let pair = telescope(&sys, &opts(None)).unwrap();
    assert_eq!(pair.telescoper, &OreOperator::dx() - &OreOperator::one());
    assert_eq!(pair.certificate, vec![RatFunc::one()]);
    assert_eq!(pair.certificate_operator, Some(OreOperator::one()));
    for (name, order) in [("gamma_sum_n2_r1.sys", 2), ("gamma_sum_n1_r2.sys", 2), ("gamma_2x_y.sys", 1)] {
        let sys = load(name);
        let pair = telescope(&sys, &opts(None)).unwrap();
        assert_eq!(pair.telescoper.ord_x(), Some(order), "{name}: {}", format_operator(&pair.telescoper, &sys.field));
    }
}

#[test]
fn bessel_bounds_and_orders() {
    for k in 0..=1u32 {
        let sys = load(&format!("bessel_k{k}.sys"));
        let b = bounds(&sys, Some(0)).unwrap();
        assert_eq!(b.order_bound, 2 * (k + 2));
        let pair = telescope(&sys, &opts(Some(0))).unwrap();
        assert_eq!(pair.telescoper.ord_x(), Some(2 * k + 1), "k = {k}");
        assert!(pair.certificate_operator.is_some());
    }
}

#[test]
fn properness_of_examples() {
    assert!(!is_y_proper(&load("nonproper.sys").u, &load("nonproper.sys").spec).proper);
    let sys = load("basis_change.sys");
    let rep = properness_report(&sys, None).unwrap();
    assert!(rep.proper);
    assert_eq!(rep.eta, Some(1));
    for w in &rep.witnesses {
        assert_eq!(w.g_left.degree(Y), Some(1));
    }
    let pair = telescope(&sys, &opts(None)).unwrap();
    assert!(verify_pair(&sys, &pair.telescoper, &pair.certificate));
}

#[test]
fn operator_printing_roundtrips() {
    let sys = load("diff_example.sys");
    let pair = telescope(&sys, &opts(Some(0))).unwrap();
    let text = format_operator(&pair.telescoper, &sys.field);
    assert_eq!(parse_operator(&text, &sys.field, &sys.spec).unwrap(), pair.telescoper);
    let _ = FieldSpec::rational();
}
