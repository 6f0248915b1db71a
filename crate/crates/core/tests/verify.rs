use coxsurf::verify::{run_suite, Suite, VerifyConfig, CRITERIA};
use coxsurf::Catalog;
use std::path::Path;

fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

#[test]
fn suite_names() {
    assert_eq!("fast".parse::<Suite>(), Ok(Suite::Fast));
    assert_eq!("full".parse::<Suite>(), Ok(Suite::Full));
    assert!("quick".parse::<Suite>().is_err());
}

#[test]
fn selected_criteria_only() {
    let c = Catalog::bundled().unwrap();
    let r = run_suite(&c, &VerifyConfig::default(), &[1, 7]);
    assert_eq!(r.criteria.iter().map(|c| c.id).collect::<Vec<_>>(), vec![1, 7]);
    assert!(r.passed());
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["suite"], "fast");
    assert_eq!(json["criteria"][0]["title"], CRITERIA[0].1);
    assert!(r.to_text().starts_with("PASS 1 "));
}

#[test]
fn directory_catalog_matches_bundled() {
    let a = Catalog::from_dir(data_dir()).unwrap();
    let r = run_suite(&a, &VerifyConfig::default(), &[2]);
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn corrupted_catalog_is_reported() {
    let tmp = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, tmp.path().join(p.file_name().unwrap())).unwrap();
    }
    // move a section off its fiber component
    let f = tmp.path().join("X_411.surf");
    let text = std::fs::read_to_string(&f).unwrap();
    let bad = text.replacen("P0 : [0,0,0,0,0,1,0,0,0,0]", "P0 : [0,0,0,0,0,0,1,0,0,0]", 1);
    assert_ne!(bad, text);
    std::fs::write(&f, bad).unwrap();
    let c = Catalog::from_dir(tmp.path()).unwrap();
    let r = run_suite(&c, &VerifyConfig { suite: Suite::Fast, ..VerifyConfig::default() }, &[2]);
    assert!(!r.passed());
    assert!(r.criteria[0].failures.iter().all(|f| f.starts_with("X_411:")), "{:?}", r.criteria[0].failures);
    assert!(!r.criteria[0].failures.is_empty());
}
