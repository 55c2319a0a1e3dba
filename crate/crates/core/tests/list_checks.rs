use latgen::generator::{list_family, GeneratorConfig, Target};
use latgen::verify::{check_containment, check_duality_closed, check_isomorph_free};

const MAX: usize = 11;

fn list(target: Target) -> Vec<String> {
    list_family(&target.spec(), MAX, &GeneratorConfig::default(), false)
        .unwrap()
        .records
}

#[test]
fn lists_are_isomorph_free() {
    for target in Target::ALL {
        assert!(check_isomorph_free(&list(target)).unwrap().passed(), "{target}");
    }
}

#[test]
fn family_inclusions() {
    let graded = list(Target::Graded);
    let semi = list(Target::Semimodular);
    let lsm = list(Target::LowerSemimodular);
    let modular = list(Target::Modular);
    let geometric = list(Target::Geometric);
    assert!(check_containment(&modular, &semi).unwrap().passed());
    assert!(check_containment(&modular, &lsm).unwrap().passed());
    assert!(check_containment(&semi, &graded).unwrap().passed());
    assert!(check_containment(&geometric, &semi).unwrap().passed());
    assert!(!check_containment(&graded, &modular).unwrap().passed());
}

#[test]
fn duality() {
    assert!(check_duality_closed(&list(Target::Modular)).unwrap().passed());
    assert!(check_duality_closed(&list(Target::Graded)).unwrap().passed());
    assert!(!check_duality_closed(&list(Target::Semimodular)).unwrap().passed());
}

#[test]
fn semimodular_at_nine_is_not_self_dual() {
    let semi = list_family(&Target::Semimodular.spec(), 9, &GeneratorConfig::default(), true)
        .unwrap()
        .records;
    let nine: Vec<String> = semi
        .into_iter()
        .filter(|r| r.as_bytes()[1] == 63 + 9)
        .collect();
    assert_eq!(nine.len(), 21);
    assert!(!check_duality_closed(&nine).unwrap().passed());
}
