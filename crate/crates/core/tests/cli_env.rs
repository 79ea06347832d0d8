use std::path::PathBuf;

use csm_forge::cli::run;

// alone in its own binary: the environment is process-wide
#[test]
fn seed_from_environment() {
    // flag and environment variable must agree on the same seed
    std::env::set_var("CSM_FORGE_SEED", "77");
    let point = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/point.ci");
    let point = point.to_str().unwrap();
    let env = run(["csm-forge", "segre", point, "--json"]);
    std::env::remove_var("CSM_FORGE_SEED");
    let flag = run(["csm-forge", "segre", point, "--json", "--seed", "77"]);
    assert_eq!(env.stdout, flag.stdout);
    assert!(flag.stdout.contains("\"seed\":77"));
}
