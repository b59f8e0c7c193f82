use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "pbwtidx.h"

int main(void) {
    const char *strings =
        "GATTACAT\nTAGAGATA\nCATCACAT\nTACATACA\nGATAGATA\nTAAAGAGC\nATTACCAT\nACATTACT\n";
    PbwtPositionalIndex *idx = NULL;
    if (pbwt_positional_build((const uint8_t *)strings, strlen(strings), "ACGT",
                              PBWT_POLICY_SAMPLED, 2, &idx) != PBWT_STATUS_OK)
        return 1;
    size_t hits[8], n = 0;
    if (pbwt_positional_query(idx, (const uint8_t *)"AGA", 3, 3, PBWT_STRATEGY_BACKWARD,
                              hits, 8, &n) != PBWT_STATUS_OK)
        return 2;
    for (size_t i = 0; i < n; i++)
        printf("%zu\n", hits[i]);
    if (pbwt_positional_query(idx, (const uint8_t *)"AGA", 3, 7, PBWT_STRATEGY_BACKWARD,
                              hits, 8, &n) != PBWT_STATUS_PATTERN_OVERRUN)
        return 3;
    printf("%s\n", pbwt_last_error_message() ? "error" : "no message");
    pbwt_positional_free(idx);

    PbwtFmIndex *fm = NULL;
    const char *text = "GATTAGATACAT";
    if (pbwt_fm_build((const uint8_t *)text, strlen(text), NULL, 5, &fm) != PBWT_STATUS_OK)
        return 4;
    uint8_t bwt[32];
    size_t len = 0;
    if (pbwt_fm_bwt(fm, bwt, sizeof bwt, &len) != PBWT_STATUS_OK)
        return 5;
    printf("%.*s\n", (int)len, (const char *)bwt);
    pbwt_fm_free(fm);
    return 0;
}
"#;

/// Tests run from `<target>/<profile>/deps`; the archive sits there or one level up.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().unwrap();
    exe.ancestors()
        .skip(1)
        .take(2)
        .map(|d| d.join("libpbwtidx_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn header_compiles_and_links_from_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler ({cc}); skipping");
        return;
    }
    let lib = static_lib().expect("libpbwtidx_ffi.a not built");

    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited {:?}", out.status);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "5\n1\n4\nerror\nTTTCGGAA$AATA\n"
    );
}
