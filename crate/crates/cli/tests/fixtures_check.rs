//! The fixture files shipped under `fixtures/` must stay in canonical form.
//! Run with REGEN_FIXTURES=1 to rewrite them after a schema change.

use std::path::PathBuf;

use logchow::blowup::star_subdivision;
use logchow::fan::{fan_a1_cone, fan_a2, fan_bl0_a2, fan_bl0_p2, fan_p1, fan_p1xp1, fan_p2};
use logchow::lattice::int_vec;
use logchow_cli::schema::{FanJson, SubdivisionJson};

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn expected() -> Vec<(&'static str, String)> {
    let fan_text = |f: &logchow::fan::Fan| {
        serde_json::to_string_pretty(&FanJson::from_fan(f)).unwrap() + "\n"
    };
    let mut out = vec![
        ("a2.json", fan_text(&fan_a2())),
        ("p1.json", fan_text(&fan_p1())),
        ("p2.json", fan_text(&fan_p2())),
        ("p1xp1.json", fan_text(&fan_p1xp1())),
        ("bl0a2.json", fan_text(&fan_bl0_a2())),
        ("bl0p2.json", fan_text(&fan_bl0_p2())),
        ("a1cone.json", fan_text(&fan_a1_cone())),
    ];
    // The blow-up square of the plane cone: the subdivision underlying both
    // squares of the pushforward/pullback warning example.
    let s = star_subdivision(&fan_a2(), &int_vec(&[1, 1])).unwrap();
    out.push((
        "a2-blowup.json",
        serde_json::to_string_pretty(&SubdivisionJson::from_subdivision(&s)).unwrap() + "\n",
    ));
    out
}

#[test]
fn fixtures_are_canonical() {
    let dir = fixture_dir();
    let regen = std::env::var("REGEN_FIXTURES").is_ok();
    for (name, text) in expected() {
        let path = dir.join(name);
        if regen {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing fixture {name}; run with REGEN_FIXTURES=1"));
        assert_eq!(on_disk, text, "fixture {name} is stale; run with REGEN_FIXTURES=1");
    }
}

#[test]
fn fixtures_load_back() {
    for (name, _) in expected() {
        let path = fixture_dir().join(name);
        let text = std::fs::read_to_string(&path).unwrap();
        if name.starts_with("a2-blowup") {
            let j: SubdivisionJson = serde_json::from_str(&text).unwrap();
            j.to_subdivision().unwrap();
        } else {
            let j: FanJson = serde_json::from_str(&text).unwrap();
            j.to_fan().unwrap();
        }
    }
}
