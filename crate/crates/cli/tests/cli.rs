mod common;

use common::{figure, listing, troplag, troplag_with_stdin, BUNDLED};
use troplag_cli::{parse, serialize};

#[test]
fn bundled_documents_pass() {
    for file in BUNDLED {
        for cmd in ["validate", "topology"] {
            let out = troplag(&[cmd, &figure(file)]);
            assert_eq!(out.code, 0, "{cmd} {file}: {}{}", out.stdout, out.stderr);
        }
    }
}

#[test]
fn failing_cases_exit_one() {
    let expected = [
        ("corner_landing.trop", "validate"),
        ("moved_vertex.trop", "validate"),
        ("shallow_segment.trop", "topology"),
        ("unbalanced.trop", "validate"),
        ("wrong_class.trop", "audin"),
    ];
    let files = listing("failing");
    assert_eq!(files.len(), expected.len());
    for (name, cmd) in expected {
        let path = figure(&format!("failing/{name}"));
        let out = troplag(&[cmd, &path]);
        assert_eq!(out.code, 1, "{cmd} {name}: {}", out.stdout);
    }
    for args in [
        &["triangle", "1", "1", "3"][..],
        &["squeeze", "1"],
        &["gen-visible", "2", "1"],
    ] {
        assert_eq!(troplag(args).code, 1, "{args:?}");
    }
}

#[test]
fn malformed_inputs_exit_two() {
    let files = listing("malformed");
    assert!(files.len() >= 6);
    for path in files {
        for cmd in ["validate", "topology", "homology", "audin", "render"] {
            let out = troplag(&[cmd, path.to_str().unwrap()]);
            assert_eq!(out.code, 2, "{cmd} {}", path.display());
            assert!(out.stderr.contains("line "), "{}", out.stderr);
        }
    }
    for args in [
        &["frobnicate"][..],
        &["triangle", "1", "1"],
        &["triangle", "1", "0.5", "1"],
        &["triangle", "0", "1", "1"],
        &["genus-bound", "-1"],
        &["squeeze", "x"],
        &["gen-family", "0"],
        &["topology", "/nonexistent/file.trop"],
    ] {
        assert_eq!(troplag(args).code, 2, "{args:?}");
    }
}

#[test]
fn triangle_messages() {
    let out = troplag(&["triangle", "1", "1", "3"]);
    assert!(out.stdout.starts_with("violated: c < a+b\n"));
    let out = troplag(&["triangle", "2/3", "5/3", "2/3"]);
    assert!(out.stdout.starts_with("violated: b < c+a\n"));
    assert_eq!(troplag(&["triangle", "1", "1", "1"]).code, 0);
}

#[test]
fn bundled_documents_round_trip() {
    let mut paths: Vec<_> = BUNDLED.iter().map(|f| figure(f)).collect();
    paths.extend(
        listing("failing")
            .iter()
            .map(|p| p.to_string_lossy().into_owned()),
    );
    for path in paths {
        let doc = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let text = serialize(&doc);
        assert_eq!(parse(&text).unwrap(), doc, "{path}");
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}

#[test]
fn generators_pipe_into_checkers() {
    for ell in 1..=3 {
        let gen = troplag(&["gen-family", &ell.to_string()]);
        assert_eq!(gen.code, 0);
        let out = troplag_with_stdin(&["topology", "-"], &gen.stdout);
        assert_eq!(out.code, 0);
        assert!(
            out.stdout.contains(&format!("k={}", 20 * ell + 2)),
            "{}",
            out.stdout
        );
    }
    let gen = troplag(&["gen-rp2", "1", "1", "4/3", "4"]);
    let out = troplag_with_stdin(&["audin", "-"], &gen.stdout);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(troplag(&["gen-rp2", "2", "1", "1", "8"]).code, 1);
}

#[test]
fn render_is_deterministic_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("troplag-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for file in BUNDLED {
        let a = troplag(&["render", &figure(file)]).stdout;
        let b = troplag(&["render", &figure(file)]).stdout;
        assert_eq!(a, b);
        let target = dir.join("out.svg");
        let out = troplag(&["render", &figure(file), "-o", target.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert_eq!(std::fs::read_to_string(&target).unwrap(), a);
    }
    let bare = troplag_with_stdin(&["render", "-"], "diagram rectangle width=2 height=1\n");
    assert_eq!(bare.code, 0);
    assert!(!bare.stdout.contains("polyline"));
    std::fs::remove_dir_all(&dir).unwrap();
}
