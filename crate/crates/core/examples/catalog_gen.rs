//! Prints the catalog JSON. Chord-diagram entries are realized with the
//! canonical side colouring and every strand read forwards.

use exkh::diagram::Diagram;
use exkh::families::catalog::{describe, CatalogEntryJson};
use exkh::families::chords::ChordDiagram;
use exkh::Limits;

fn chord_diagram(word: &[u32]) -> Diagram {
    let chords = ChordDiagram::from_word(word).unwrap();
    let sides = chords.sides().unwrap();
    let directions = vec![false; chords.strands().len()];
    chords.realize(&sides, &directions).unwrap()
}

fn main() {
    let limits = Limits::default();
    let mut entries = Vec::new();
    let mut push = |name: &str, description: &str, d: Diagram, reconstructed: bool| {
        entries.push(CatalogEntryJson {
            name: name.into(),
            description: description.into(),
            pd: d.to_string(),
            reconstructed,
            expected: describe(&d, &limits).unwrap(),
        });
    };
    let parse = |s: &str| s.parse::<Diagram>().unwrap();
    push("unknot", "crossingless circle", parse("O"), false);
    push("negative-kink", "one-crossing unknot whose A-chord is admissible", parse("X(1,2,2,1)"), false);
    push("left-trefoil", "standard trefoil, all crossings negative", parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"), false);
    push("right-trefoil", "mirror of the left trefoil", parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").mirror(), false);
    push("figure-eight", "figure-eight knot", parse("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"), false);
    push("hopf", "Hopf link", parse("X(4,1,3,2) X(2,3,1,4)"), false);
    push("single-edge", "Lando graph K_{1,1}", chord_diagram(&[1, 2, 1, 2]), true);
    push("k23", "Lando graph K_{2,3}", chord_diagram(&[1, 3, 4, 5, 1, 2, 5, 4, 3, 2]), true);
    push(
        "hexagon",
        "six negative crossings, one A-circle, Lando graph a hexagon",
        parse("X(1,5,2,6) X(4,9,1,10) X(10,6,11,7) X(11,2,12,3) X(7,3,8,4) X(8,12,5,9)"),
        true,
    );
    push(
        "two-hexagons",
        "eleven crossings, three negative, Lando graph two hexagons sharing a vertex",
        parse(
            "X(1,8,2,9) X(14,16,1,15) X(18,6,15,5) X(4,20,5,19) X(22,10,19,9) X(21,3,22,2) \
             X(10,3,11,4) X(11,21,12,20) X(17,13,18,12) X(6,13,7,14) X(7,17,8,16)",
        ),
        true,
    );
    println!("{}", serde_json::to_string_pretty(&entries).unwrap());
}
