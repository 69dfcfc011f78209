use overlat_core::kummer::classify;

const TABLE: &str = include_str!("golden/kummer_table.tsv");

fn expected_witnesses(k: i64) -> Vec<&'static str> {
    match (k % 3, k % 9) {
        (1 | 2, _) | (0, 3) => vec!["(0,0,1/3)"],
        (0, 6) => vec!["(0,0,1/3)", "(1/3,0,0)"],
        _ => vec!["(0,0,1/3)", "(1/3,0,1/3)", "(1/3,0,2/3)"],
    }
}

#[test]
fn golden_table_matches_classification() {
    let mut lines = TABLE.lines();
    assert_eq!(lines.next(), Some("k\tn_over\twitnesses"));
    let mut k = 0;
    for line in lines {
        k += 1;
        let r = classify(k).unwrap();
        let w: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
        assert_eq!(line, format!("{k}\t{}\t{}", r.n_over, w.join(";")));
    }
    assert_eq!(k, 60);
}

#[test]
fn golden_table_follows_the_residue_pattern() {
    for line in TABLE.lines().skip(1) {
        let cols: Vec<&str> = line.split('\t').collect();
        let k: i64 = cols[0].parse().unwrap();
        let w: Vec<&str> = cols[2].split(';').collect();
        assert_eq!(w, expected_witnesses(k), "k = {k}");
        assert_eq!(cols[1].parse::<usize>().unwrap(), w.len());
    }
}
