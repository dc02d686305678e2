use proptest::prelude::*;
use thomas_cli::{parse_document, Document, Mode};

const QUADRATIC: &str = "vars: a<b<c<x; a*x^2+b*x+c = 0";

#[test]
fn quadratic_document() {
    let doc = parse_document(QUADRATIC, None).unwrap();
    assert_eq!(doc.mode(), Mode::Algebraic);
    assert_eq!(doc.relation_lines(), vec!["x^2*a + x*b + c = 0"]);
    let Document::Algebraic(a) = &doc else { panic!("mode") };
    assert_eq!(a.ranking.names(), ["a", "b", "c", "x"]);
}

#[test]
fn burgers_document() {
    let text = "mode: differential\nderivations: x, t\nindeterminates: u\nu[0,1]+u[0,0]*u[1,0] = 0\n";
    let doc = parse_document(text, None).unwrap();
    assert_eq!(doc.mode(), Mode::Differential);
    assert_eq!(doc.relation_lines().len(), 1);
    let again = parse_document(text.trim_start_matches("mode: differential\n"), Some(Mode::Differential)).unwrap();
    assert_eq!(again.to_text(), doc.to_text());
}

#[test]
fn dangling_operator_is_located() {
    let e = parse_document("vars: x\nx^2 + = 0", None).err().unwrap();
    assert_eq!((e.line, e.column), (2, 5));
    let e = parse_document("vars: x; x^2 + = 0", None).err().unwrap();
    assert_eq!(e.line, 1);
    assert_eq!(&"vars: x; x^2 + = 0"[e.column - 1..e.column], "+");
}

#[test]
fn other_errors() {
    assert!(parse_document("x = 0", None).is_err());
    assert!(parse_document("vars: x; y = 0", None).err().unwrap().message.contains("undeclared"));
    assert!(parse_document("vars: x; x + 1", None).is_err());
    assert!(parse_document("vars: x, x; x = 0", None).is_err());
    assert!(parse_document("mode: tropical\nvars: x", None).is_err());
}

#[test]
fn comments_and_inequations() {
    let doc = parse_document("# a comment\nvars: a < x\nx^2 + x + 1 = 0 # trailing\nx + a <> 0; x - a != 1", None).unwrap();
    assert_eq!(doc.relation_lines(), vec!["x^2 + x + 1 = 0", "x + a <> 0", "x - a - 1 <> 0"]);
}

#[test]
fn canonical_text_is_a_fixed_point() {
    for text in [
        QUADRATIC,
        "vars: y < x\nx^3 + (3*y + 1)*x^2 + (3*y^2 + 2*y)*x + y^3 = 0",
        "mode: differential\nderivations: x, t\nindeterminates: eta < zeta\nranking: elimination eta >> zeta\neta*zeta - eta[1,0] = 0\neta <> 0",
        "mode: differential\nderivations: t\nindeterminates: u < y < x1 < x2\nranking: orderly\nscan: t\ny - x1 = 0",
        "vars: x",
    ] {
        let doc = parse_document(text, None).unwrap();
        let canon = doc.to_text();
        let again = parse_document(&canon, None).unwrap();
        assert_eq!(again.to_text(), canon, "{text}");
    }
}

fn arb_term() -> impl Strategy<Value = String> {
    (-5i64..=5, 0u32..3, 0u32..3).prop_map(|(c, i, j)| format!("({c})*a^{i}*x^{j}"))
}

proptest! {
    #[test]
    fn print_parse_round_trip(lhs in prop::collection::vec(arb_term(), 1..5), rhs in arb_term(), neq in any::<bool>()) {
        let op = if neq { "<>" } else { "=" };
        let text = format!("vars: a < x\n{} {op} {rhs}", lhs.join(" + "));
        let doc = match parse_document(&text, None) {
            Ok(d) => d,
            Err(e) => return Err(TestCaseError::fail(format!("{text}: {e}"))),
        };
        let canon = doc.to_text();
        prop_assert_eq!(parse_document(&canon, None).unwrap().to_text(), canon);
    }
}
