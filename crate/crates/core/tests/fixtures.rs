use weakcross::fixtures::{by_name, groupoid_fixture, hopf_smash_fixture, observed_verdicts, paper_example};
use weakcross::{Field, FixtureError, Verdict};

fn fields() -> Vec<Field> {
    vec![Field::Rational, Field::prime(7).unwrap(), Field::prime(3).unwrap()]
}

#[test]
fn observed_matches_expected() {
    for f in fields() {
        let mut bundles = vec![paper_example(f), hopf_smash_fixture(f).unwrap()];
        for n in 2..=3 {
            bundles.push(groupoid_fixture(f, n).unwrap());
        }
        for b in bundles {
            let obs = observed_verdicts(&b);
            assert!(b.mismatches(&obs).is_empty(), "{} over {f}: {:?}", b.name, b.mismatches(&obs));
        }
    }
}

#[test]
fn paper_example_over_f2() {
    let f = Field::prime(2).unwrap();
    let b = paper_example(f);
    assert!(b.mismatches(&observed_verdicts(&b)).is_empty());
    assert_eq!(
        hopf_smash_fixture(f).err(),
        Some(FixtureError::Characteristic { name: "smash-c2", characteristic: 2 })
    );
}

#[test]
fn only_the_literature_example_fails_10() {
    for name in ["paper8", "smash-c2", "groupoid-2"] {
        let b = by_name(name, Field::Rational).unwrap().unwrap();
        let v = observed_verdicts(&b);
        assert_eq!(v["10"] == Verdict::Fail, b.from_literature, "{name}");
        // the "compare" verdict is reached exactly when (10) holds
        assert_eq!(v["compare"] == Verdict::NotChecked, v["10"] == Verdict::Fail, "{name}");
    }
}
