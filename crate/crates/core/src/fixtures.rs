//! Bundled knowledge bases with their canonical queries.

use crate::unify::RenameStyle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub query: &'static str,
    /// Naming style the tree is usually drawn with.
    pub rename: RenameStyle,
}

const fn fixture(name: &'static str, source: &'static str, query: &'static str) -> Fixture {
    Fixture {
        name,
        source,
        query,
        rename: RenameStyle::Prime,
    }
}

pub const FIXTURES: &[Fixture] = &[
    fixture(
        "romance",
        include_str!("../fixtures/romance.pl"),
        "jealous(X,Y)",
    ),
    fixture(
        "animals",
        include_str!("../fixtures/animals.pl"),
        "animal(Animal)",
    ),
    fixture(
        "member",
        include_str!("../fixtures/member.pl"),
        "member(X,[a,b,c])",
    ),
    fixture("cut-abc", include_str!("../fixtures/cut-abc.pl"), "a(A)"),
    fixture(
        "youngest",
        include_str!("../fixtures/youngest.pl"),
        "youngest(Who)",
    ),
    fixture(
        "proof-search-k",
        include_str!("../fixtures/proof-search-k.pl"),
        "k(Y)",
    ),
    Fixture {
        rename: RenameStyle::Numeric,
        ..fixture(
            "descend",
            include_str!("../fixtures/descend.pl"),
            "descend(anne,donna)",
        )
    },
    fixture(
        "add",
        include_str!("../fixtures/add.pl"),
        "add(succ(succ(succ(0))),succ(succ(0)),R)",
    ),
    fixture(
        "append",
        include_str!("../fixtures/append.pl"),
        "append([a,b,c],[1,2,3],X)",
    ),
    fixture(
        "magic",
        include_str!("../fixtures/magic.pl"),
        "magic(Hermione)",
    ),
];

pub fn fixtures() -> &'static [Fixture] {
    FIXTURES
}

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

/// One `name: query` line per fixture.
pub fn listing() -> String {
    FIXTURES
        .iter()
        .map(|f| format!("{}: {}\n", f.name, f.query))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reader::{parse_program, parse_query};

    #[test]
    fn every_fixture_parses() {
        for f in FIXTURES {
            parse_program(f.source).unwrap_or_else(|e| panic!("{}: {e}", f.name));
            parse_query(f.query).unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
    }

    #[test]
    fn listing_contents() {
        let l = listing();
        assert!(l.contains("romance: jealous(X,Y)\n"));
        assert!(l.contains("cut-abc: a(A)\n"));
        assert!(l.contains("add: add(succ(succ(succ(0))),succ(succ(0)),R)\n"));
        assert_eq!(l.lines().count(), 10);
        assert!(find("descend").is_some());
        assert!(find("nope").is_none());
    }
}
