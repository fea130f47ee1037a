use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use cdlattice_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cdl_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn group(spec: &str) -> *mut CdlGroup {
    let s = CString::new(spec).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { cdl_group_from_spec(s.as_ptr(), &mut g) },
        CdlStatus::Ok,
        "{}",
        last_error()
    );
    g
}

#[test]
fn q8_lattice_through_handles() {
    unsafe {
        let g = group("Q8");
        assert_eq!(cdl_group_order(g), 8);

        let mut label = ptr::null_mut();
        assert_eq!(cdl_group_label(g, &mut label), CdlStatus::Ok);
        assert_eq!(CStr::from_ptr(label).to_str().unwrap(), "Q8");
        cdl_string_free(label);

        let mut l = ptr::null_mut();
        assert_eq!(cdl_lattice_new(g, 0, &mut l), CdlStatus::Ok);
        assert_eq!(cdl_lattice_len(l), 6);

        let mut m_star = 0u64;
        assert_eq!(cdl_lattice_m_star(l, &mut m_star), CdlStatus::Ok);
        assert_eq!(m_star, 16);

        let mut members = 0;
        for id in 0..cdl_lattice_len(l) {
            let mut flag = 0u8;
            assert_eq!(cdl_lattice_is_cd_member(l, id, &mut flag), CdlStatus::Ok);
            members += usize::from(flag);
        }
        assert_eq!(members, 5);

        let top = cdl_lattice_len(l) - 1;
        let (mut meet, mut join) = (usize::MAX, usize::MAX);
        assert_eq!(cdl_lattice_meet(l, 0, top, &mut meet), CdlStatus::Ok);
        assert_eq!(cdl_lattice_join(l, 0, top, &mut join), CdlStatus::Ok);
        assert_eq!((meet, join), (0, top));

        let mut size = 0;
        assert_eq!(cdl_lattice_subgroup_size(l, top, &mut size), CdlStatus::Ok);
        assert_eq!(size, 8);

        let mut dot = ptr::null_mut();
        assert_eq!(cdl_lattice_dot(l, &mut dot), CdlStatus::Ok);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph"));
        cdl_string_free(dot);

        cdl_lattice_free(l);
        cdl_group_free(g);
    }
}

#[test]
fn verify_json_round_trips() {
    unsafe {
        let g = group("Q8xC2");
        let mut json = ptr::null_mut();
        assert_eq!(cdl_verify_json(g, 0, &mut json), CdlStatus::Ok);
        let v: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["group"], "Q8xC2");
        assert_eq!(v["hypothesis"], "true");
        assert_eq!(v["m_star"], 64);
        cdl_string_free(json);
        cdl_group_free(g);
    }
}

#[test]
fn cayley_table_input() {
    let table: Vec<usize> = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a + b) % 3))
        .collect();
    let label = CString::new("Z3").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            cdl_group_from_table(label.as_ptr(), table.as_ptr(), 3, &mut g),
            CdlStatus::Ok
        );
        let mut ord = 0;
        assert_eq!(cdl_group_element_order(g, 1, &mut ord), CdlStatus::Ok);
        assert_eq!(ord, 3);
        let mut prod = 0;
        assert_eq!(cdl_group_mul(g, 2, 2, &mut prod), CdlStatus::Ok);
        assert_eq!(prod, 1);
        assert_eq!(cdl_group_mul(g, 3, 0, &mut prod), CdlStatus::OutOfRange);
        cdl_group_free(g);
    }

    let bad = [0usize, 1, 1, 1];
    let mut g = ptr::null_mut();
    let status = unsafe { cdl_group_from_table(label.as_ptr(), bad.as_ptr(), 2, &mut g) };
    assert_eq!(status, CdlStatus::InvalidTable);
    assert!(g.is_null());
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut g = ptr::null_mut();
    let s = CString::new("C4x(").unwrap();
    assert_eq!(
        unsafe { cdl_group_from_spec(s.as_ptr(), &mut g) },
        CdlStatus::InvalidSpec
    );
    assert!(!last_error().is_empty());

    let s = CString::new("SDP(5,2,3)").unwrap();
    assert_eq!(
        unsafe { cdl_group_from_spec(s.as_ptr(), &mut g) },
        CdlStatus::InvalidAction
    );

    assert_eq!(
        unsafe { cdl_group_from_spec(ptr::null(), &mut g) },
        CdlStatus::NullPointer
    );

    let invalid = [0xffu8, 0];
    let status = unsafe { cdl_group_from_spec(invalid.as_ptr().cast(), &mut g) };
    assert_eq!(status, CdlStatus::InvalidUtf8);

    unsafe {
        let g = group("C2xC2xC2xC2xC2xC2xC2");
        let mut l = ptr::null_mut();
        assert_eq!(cdl_lattice_new(g, 100, &mut l), CdlStatus::Capacity);
        assert!(l.is_null());
        cdl_group_free(g);

        let g = group("C2");
        let mut l = ptr::null_mut();
        assert_eq!(cdl_lattice_new(g, 0, &mut l), CdlStatus::Ok);
        let mut size = 0;
        assert_eq!(
            cdl_lattice_subgroup_size(l, 7, &mut size),
            CdlStatus::OutOfRange
        );
        cdl_lattice_free(l);
        cdl_group_free(g);
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cdlattice.h"))
            .unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct CdlGroup CdlGroup;"));
    assert!(header.contains("CDL_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(out) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", "-std=c99"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include/cdlattice.h"))
        .output()
    else {
        eprintln!("no C compiler on PATH; skipping");
        return;
    };
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}
