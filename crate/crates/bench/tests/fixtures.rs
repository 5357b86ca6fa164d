use superstring_bench::{fragments, random_instances};

#[test]
fn fixtures_are_fixed() {
    assert_eq!(random_instances(10, 3, 4), random_instances(10, 3, 4));
    assert_eq!(fragments(200, 24, 1, 2), fragments(200, 24, 1, 2));
}

#[test]
fn fixture_sizes() {
    for inst in random_instances(12, 5, 4) {
        assert!((1..=12).contains(&inst.len()));
        assert!(inst.words().iter().all(|w| (6..=12).contains(&w.len())));
    }
    // reads of a 200-letter genome: 100 drawn, repeats and contained reads dropped
    let inst = &fragments(200, 24, 1, 2)[0];
    assert!(inst.len() > 20 && inst.len() <= 100, "{}", inst.len());
}
