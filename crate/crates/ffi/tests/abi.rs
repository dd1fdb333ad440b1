use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use liework_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn lie_handles() {
    unsafe {
        let mut h: *mut LwLie = ptr::null_mut();
        assert_eq!(lw_lie_catalog(cs("heisenberg3").as_ptr(), &mut h), LwStatus::Ok);
        let mut d = 0usize;
        assert_eq!(lw_lie_dim(h, &mut d), LwStatus::Ok);
        assert_eq!(d, 3);
        let mut nil = false;
        assert_eq!(lw_lie_is_nilpotent(h, &mut nil), LwStatus::Ok);
        assert!(nil);
        assert_eq!(lw_lie_nilradical_dim(h, &mut d), LwStatus::Ok);
        assert_eq!(d, 3);
        assert_eq!(lw_lie_derivations_dim(h, false, &mut d), LwStatus::Ok);
        assert_eq!(d, 6);
        assert_eq!(lw_lie_derivations_dim(h, true, &mut d), LwStatus::Ok);
        assert_eq!(d, 1);
        assert_eq!(lw_lie_nilradical_condition(h), LwStatus::Ok);
        lw_lie_free(h);
    }
}

#[test]
fn precondition_and_errors() {
    unsafe {
        let mut h: *mut LwLie = ptr::null_mut();
        assert_eq!(lw_lie_catalog(cs("rototranslation").as_ptr(), &mut h), LwStatus::Ok);
        assert_eq!(lw_lie_nilradical_condition(h), LwStatus::Precondition);
        let msg = CStr::from_ptr(lw_last_error_message()).to_str().unwrap();
        assert!(msg.contains("not nilpotent"), "{msg}");
        let mut d = 0usize;
        assert_eq!(lw_lie_nilradical_dim(h, &mut d), LwStatus::Ok);
        assert_eq!(d, 2);
        assert!(lw_last_error_message().is_null());
        lw_lie_free(h);

        let mut h: *mut LwLie = ptr::null_mut();
        assert_eq!(lw_lie_catalog(cs("nope").as_ptr(), &mut h), LwStatus::NotFound);
        assert_eq!(lw_lie_catalog(cs("z4-cycle").as_ptr(), &mut h), LwStatus::WrongKind);
        assert_eq!(lw_lie_catalog(ptr::null(), &mut h), LwStatus::NullArg);
        assert_eq!(lw_lie_dim(ptr::null(), &mut d), LwStatus::NullArg);
        let bad = b"\xff\xfe\0";
        assert_eq!(lw_lie_parse(bad.as_ptr().cast(), &mut h), LwStatus::InvalidUtf8);
        let text = cs("lie_algebra x\ndim 2\nbasis a b\nbracket [a,q] = a\nend\n");
        assert_eq!(lw_lie_parse(text.as_ptr(), &mut h), LwStatus::Parse);
        let msg = CStr::from_ptr(lw_last_error_message()).to_str().unwrap();
        assert!(msg.contains("line 4"), "{msg}");
        lw_lie_free(ptr::null_mut());
    }
}

#[test]
fn group_handles() {
    unsafe {
        let mut g: *mut LwGroup = ptr::null_mut();
        assert_eq!(lw_group_catalog(cs("fourpoint-discrete").as_ptr(), &mut g), LwStatus::Ok);
        let mut n = 0usize;
        assert_eq!(lw_group_order(g, &mut n), LwStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(lw_group_isometry_count(g, &mut n), LwStatus::Ok);
        assert_eq!(n, 24);
        let mut t = LwTfae::default();
        assert_eq!(lw_group_tfae(g, &mut t), LwStatus::Ok);
        assert!(!t.a && !t.b && !t.c && !t.d && t.equivalent);
        assert_eq!((t.affine_count, t.translation_count, t.stabilizer_count), (8, 4, 6));
        lw_group_free(g);
    }
}

#[test]
fn report_round_trip() {
    unsafe {
        let entry = liework::catalog::find("heisenberg3").unwrap();
        let text = cs(&entry.to_text());
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(lw_report_json(text.as_ptr(), &mut out), LwStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        lw_string_free(out);
        assert_eq!(json["body"]["tool"], "liework");
        assert!(json["digest"].as_str().unwrap().len() == 64);
    }
}

fn target_dir() -> PathBuf {
    // tests/abi-<hash> lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libliework_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let out = tempfile::tempdir().unwrap();
    let exe = out.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn which_cc() -> Result<String, ()> {
    for cc in [std::env::var("CC").unwrap_or_default().as_str(), "cc", "gcc", "clang"] {
        if !cc.is_empty() && Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
