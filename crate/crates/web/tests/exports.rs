use narayana_web::{omega_hasse_json, path_stats_json, q_narayana_json, random_path_string};
use serde_json::{json, Value};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn stats_of_figure_path() {
    let v = parse(path_stats_json("vvhvvvhhvhhvhh").unwrap());
    assert_eq!(v["descents"], json!([3, 8, 11]));
    assert_eq!(v["des"], 3);
    assert_eq!(v["maj"], 22);
    assert_eq!(v["semilength"], 7);
    assert_eq!(v["tableau"], json!([[1, 2], [3, 5], [5, 6]]));
    let w = parse(path_stats_json(" VVVHHHVH ").unwrap());
    assert_eq!(w["ls"], json!([3, 6]));
    assert!(path_stats_json("hv").is_err());
}

#[test]
fn random_paths_are_seeded() {
    let a = random_path_string(9, 4).unwrap();
    assert_eq!(a, random_path_string(9, 4).unwrap());
    assert_eq!(a.len(), 18);
    assert!(random_path_string(0, 1).is_err());
    assert!(random_path_string(32, 1).is_err());
}

#[test]
fn explorer_rows() {
    let v = parse(q_narayana_json(3).unwrap());
    assert_eq!(v[1], json!({ "k": 1, "narayana": "3", "text": "q^2 + q^3 + q^4", "coeffs": ["0", "0", "1", "1", "1"] }));
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert!(q_narayana_json(0).is_err());
    assert!(q_narayana_json(41).is_err());
}

#[test]
fn omega_4_layout() {
    let v = parse(omega_hasse_json(4).unwrap());
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 14);
    assert_eq!(v["edges"].as_array().unwrap().len(), 16);
    let bottom: Vec<&Value> = nodes.iter().filter(|n| n["level"] == 0).map(|n| &n["path"]).collect();
    assert_eq!(bottom, vec!["vhvhvhvh"]);
    for e in v["edges"].as_array().unwrap() {
        let (a, b) = (e[0].as_u64().unwrap() as usize, e[1].as_u64().unwrap() as usize);
        assert!(nodes[a]["level"].as_u64() < nodes[b]["level"].as_u64());
    }
    assert!(omega_hasse_json(9).is_err());
}
