//! Compiles a C program against the generated header and the static
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "omegalie.h"

int main(void) {
    OlAlgebra *alg = NULL;
    if (ol_algebra_canonical("C:-1/2", "Fp:101", &alg) != OL_STATUS_OK) return 10;
    OlClassification *result = NULL;
    if (ol_classify(alg, OL_ALLOW_EXTENSION, &result) != OL_STATUS_OK) return 11;
    char *label = NULL;
    if (ol_classification_label(result, &label) != OL_STATUS_OK) return 12;
    printf("%s\n", label);
    ol_string_free(label);
    ol_classification_free(result);
    ol_algebra_free(alg);
    if (ol_algebra_canonical("C:0", NULL, &alg) != OL_STATUS_INVALID) return 13;
    printf("%s\n", ol_last_error_message());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // the test binary lives in <target>/<profile>/deps; the static library one level up
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libomegalie_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "C:50\nalpha must be nonzero\n");
}
