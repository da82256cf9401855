use std::path::Path;
use std::process::Command;

fn header() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/superchar.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for sym in [
        "typedef struct ScCombo ScCombo;",
        "typedef struct ScNcsym ScNcsym;",
        "SC_STATUS_OK = 0",
        "SC_STATUS_PANIC = 7",
        "sc_combo_chi(",
        "sc_restrict(",
        "sc_superinduce(",
        "sc_tensor(",
        "sc_inner_product(",
        "sc_ncsym_star(",
        "sc_verify(",
        "sc_last_error_message(void)",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/superchar.h");
    let Ok(o) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-std=c99"]).arg(&path).output() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}
