//! Compile and run a small C program against the generated header and the
//! static library, exercising the whole binding surface from C.

use std::path::PathBuf;
use std::process::Command;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    if !include.join("jcubic.h").exists() {
        panic!("header was not generated");
    }
    // the staticlib lands next to this test's artifacts
    let mut lib_dir = PathBuf::from(std::env::current_exe().unwrap());
    lib_dir.pop(); // test binary name
    if lib_dir.ends_with("deps") {
        lib_dir.pop();
    }
    let lib = lib_dir.join("libjcubic_ffi.a");
    if !lib.exists() {
        panic!("staticlib not found at {}", lib.display());
    }
    let tmp = tempdir();
    let c_src = tmp.join("smoke.c");
    std::fs::write(
        &c_src,
        r#"
#include <stdio.h>
#include <string.h>
#include "jcubic.h"

int main(void) {
    JcField *field = NULL;
    if (jc_field_new("Fp:5", &field) != JcStatus_Ok) return 1;
    uint64_t ch = 0;
    if (jc_field_characteristic(field, &ch) != JcStatus_Ok || ch != 5) return 2;
    JcAlgebra *alg = NULL;
    if (jc_algebra_new(field, "tits1(etale3(split),mu=3)", &alg) != JcStatus_Ok) return 3;
    uintptr_t dim = 0;
    if (jc_algebra_dim(alg, &dim) != JcStatus_Ok || dim != 9) return 4;
    if (jc_algebra_verify(alg, 10) != JcStatus_Ok) return 5;
    char *json = NULL;
    int exit_code = -1;
    if (jc_run("Fp:5", "her3(cd(F,1,1),gamma=1,1,1)", "build", 0, &json, &exit_code)
        != JcStatus_Ok) return 6;
    if (exit_code != 0 || strstr(json, "build.dim") == NULL) return 7;
    jc_string_free(json);
    jc_algebra_free(alg);
    jc_field_free(field);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.join("smoke");
    let status = Command::new("cc")
        .arg(&c_src)
        .arg("-I")
        .arg(&include)
        .arg(lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .expect("cc not available");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().expect("run smoke");
    assert!(out.status.success(), "smoke exited with {:?}", out.status);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jcubic-ffi-smoke-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
