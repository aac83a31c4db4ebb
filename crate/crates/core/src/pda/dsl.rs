//! Line-oriented automaton definitions.
//!
//! ```text
//! itpda 2
//! states q0 q1 q2
//! input a
//! stack Z X1 X2 F
//! init q0 Z
//! q0 eps Z,F  -> q0 push2 F,F
//! q0 eps X1,F -> q1 pop2
//! q0 a   X1   -> q0 pop1
//! ```
//!
//! `#` starts a comment. Tokens are separated by whitespace; patterns and
//! pushed words are comma-separated symbol lists, `eps` marks an ε-move and
//! operations are `popJ` / `pushJ` with `1 <= J <= k`. The header lines may
//! come in any order but must precede the transitions.

use std::fmt::Write as _;

use thiserror::Error;

use super::{DefinitionError, IterPda, NamedOp, NamedTransition, StackOp, Symbol, Transition, EPSILON};
use crate::store::Store;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Semantic(DefinitionError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, kind: ParseErrorKind::Syntax(msg.into()) }
}

fn semantic(line: usize, err: DefinitionError) -> ParseError {
    ParseError { line, kind: ParseErrorKind::Semantic(err) }
}

#[derive(Default)]
struct Header<'a> {
    levels: Option<usize>,
    states: Option<Vec<&'a str>>,
    input: Option<Vec<&'a str>>,
    stack: Option<Vec<&'a str>>,
    init: Option<(&'a str, &'a str)>,
}

/// Parses an automaton definition.
pub fn parse_spec(text: &str) -> Result<IterPda, ParseError> {
    let mut header = Header::default();
    let mut transitions = Vec::new();
    let mut lines_of = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&first) = tokens.first() else { continue };

        if header.levels.is_none() {
            if first != "itpda" || tokens.len() != 2 {
                return Err(syntax(line, "expected `itpda <levels>` as the first line"));
            }
            let levels = tokens[1]
                .parse()
                .map_err(|_| syntax(line, format!("bad level count `{}`", tokens[1])))?;
            header.levels = Some(levels);
            continue;
        }

        if tokens.contains(&"->") {
            transitions.push(parse_transition(line, &tokens)?);
            lines_of.push(line);
            continue;
        }
        if !transitions.is_empty() {
            return Err(syntax(line, format!("`{first}` after the first transition")));
        }
        let rest = tokens[1..].to_vec();
        let slot = match first {
            "states" => &mut header.states,
            "input" => &mut header.input,
            "stack" => &mut header.stack,
            "init" => {
                if rest.len() != 2 {
                    return Err(syntax(line, "expected `init <state> <symbol>`"));
                }
                if header.init.replace((rest[0], rest[1])).is_some() {
                    return Err(syntax(line, "`init` given twice"));
                }
                continue;
            }
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        };
        if slot.replace(rest).is_some() {
            return Err(syntax(line, format!("`{first}` given twice")));
        }
    }

    let levels = header.levels.ok_or_else(|| syntax(last_line.max(1), "empty definition"))?;
    let missing = |what: &str| syntax(last_line, format!("missing `{what}` line"));
    let states = header.states.ok_or_else(|| missing("states"))?;
    let input = header.input.ok_or_else(|| missing("input"))?;
    let stack = header.stack.ok_or_else(|| missing("stack"))?;
    let init = header.init.ok_or_else(|| missing("init"))?;

    IterPda::new(levels, &states, &input, &stack, init, &transitions).map_err(|err| match err {
        DefinitionError::InTransition { index, source } => semantic(lines_of[index], *source),
        DefinitionError::DuplicateTransition(index) => {
            semantic(lines_of[index], DefinitionError::DuplicateTransition(index))
        }
        other => semantic(last_line, other),
    })
}

fn split_list(line: usize, token: &str) -> Result<Vec<String>, ParseError> {
    let items: Vec<String> = token.split(',').map(str::to_owned).collect();
    if items.iter().any(String::is_empty) {
        return Err(syntax(line, format!("empty item in `{token}`")));
    }
    Ok(items)
}

fn parse_transition(line: usize, tokens: &[&str]) -> Result<NamedTransition, ParseError> {
    let (from, input, pattern, to, op, word) = match tokens {
        [from, input, pattern, "->", to, op] => (from, input, pattern, to, op, None),
        [from, input, pattern, "->", to, op, word] => (from, input, pattern, to, op, Some(word)),
        _ => {
            return Err(syntax(
                line,
                "expected `<state> <letter|eps> <pattern> -> <state> <popJ|pushJ> [word]`",
            ))
        }
    };
    let level_of = |digits: &str| {
        digits
            .parse::<usize>()
            .map_err(|_| syntax(line, format!("bad operation `{op}`")))
    };
    let op = if let Some(digits) = op.strip_prefix("push") {
        let word = word.ok_or_else(|| syntax(line, "push needs a word"))?;
        NamedOp::Push(level_of(digits)?, split_list(line, word)?)
    } else if let Some(digits) = op.strip_prefix("pop") {
        if word.is_some() {
            return Err(syntax(line, "pop takes no word"));
        }
        NamedOp::Pop(level_of(digits)?)
    } else {
        return Err(syntax(line, format!("bad operation `{op}`")));
    };
    Ok(NamedTransition {
        from: (*from).to_owned(),
        input: (*input != EPSILON).then(|| (*input).to_owned()),
        pattern: split_list(line, pattern)?,
        to: (*to).to_owned(),
        op,
    })
}

/// `from`, `input`, `pattern` and `-> to op` of one transition line.
pub(super) fn transition_columns(pda: &IterPda, t: &Transition) -> [String; 4] {
    let names = |ids: &[Symbol]| {
        ids.iter()
            .map(|s| pda.symbol_name(*s))
            .collect::<Vec<_>>()
            .join(",")
    };
    let op = match &t.op {
        StackOp::Pop { level } => format!("pop{level}"),
        StackOp::Push { level, word } => format!("push{level} {}", names(word)),
    };
    [
        pda.state_name(t.from).to_owned(),
        t.input.map_or(EPSILON, |l| pda.letter_name(l)).to_owned(),
        names(&t.pattern),
        format!("-> {} {op}", pda.state_name(t.to)),
    ]
}

pub(super) fn write_spec(pda: &IterPda) -> String {
    let rows: Vec<[String; 4]> = pda.transitions().iter().map(|t| transition_columns(pda, t)).collect();
    let width = |col: usize| rows.iter().map(|r| r[col].len()).max().unwrap_or(0);
    let widths = [width(0), width(1), width(2)];

    let mut out = String::new();
    let _ = writeln!(out, "itpda {}", pda.levels());
    let _ = writeln!(out, "states {}", pda.states().join(" "));
    let _ = writeln!(out, "input {}", pda.input_alphabet().join(" "));
    let _ = writeln!(out, "stack {}", pda.stack_alphabet().join(" "));
    let _ = writeln!(
        out,
        "init {} {}",
        pda.state_name(pda.initial_state()),
        pda.symbol_name(pda.initial_symbol())
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:w0$} {:w1$} {:w2$} {}",
            r[0],
            r[1],
            r[2],
            r[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
    }
    out
}

/// Parses a store in the rendering format (`ε`, `Z[]`, `X1[F[].F[]].X2[]`)
/// over the automaton's stack alphabet.
pub fn parse_store(pda: &IterPda, text: &str) -> Result<Store<Symbol>, ParseError> {
    let text = text.trim();
    if text.is_empty() || text == "ε" || text == EPSILON {
        return Ok(Store::empty());
    }
    let mut parser = StoreParser { pda, bytes: text.as_bytes(), pos: 0 };
    let store = parser.sequence()?;
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(store)
}

struct StoreParser<'a> {
    pda: &'a IterPda,
    bytes: &'a [u8],
    pos: usize,
}

impl StoreParser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        syntax(1, format!("{msg} at column {}", self.pos + 1))
    }

    fn sequence(&mut self) -> Result<Store<Symbol>, ParseError> {
        let mut entries = Vec::new();
        loop {
            let start = self.pos;
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a symbol"));
            }
            let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or_default();
            let symbol = self
                .pda
                .symbol(name)
                .ok_or_else(|| semantic(1, DefinitionError::UnknownSymbol(name.to_owned())))?;
            self.expect(b'[')?;
            let flag = if self.peek() == Some(b']') { Store::empty() } else { self.sequence()? };
            self.expect(b']')?;
            entries.push((symbol, flag));
            if self.peek() != Some(b'.') {
                return Ok(Store::from_entries(entries));
            }
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# comment line
itpda 2
states q0 q1
input a
stack Z F   # trailing comment
init q0 Z
q0 eps Z   -> q0 push2 F
q0 eps Z,F -> q1 pop2
q1 a   Z   -> q1 pop1
";

    #[test]
    fn parses_a_small_definition() {
        let pda = parse_spec(SMALL).unwrap();
        assert_eq!(pda.levels(), 2);
        assert_eq!(pda.states(), ["q0", "q1"]);
        assert_eq!(pda.transitions().len(), 3);
        assert_eq!(pda.transitions()[1].pattern.len(), 2);
        assert_eq!(pda.transitions()[2].input, pda.letter("a"));
    }

    #[test]
    fn round_trips_through_text() {
        let pda = parse_spec(SMALL).unwrap();
        let text = pda.to_spec();
        assert_eq!(parse_spec(&text).unwrap(), pda);
        assert_eq!(parse_spec(&text).unwrap().to_spec(), text);
    }

    #[test]
    fn no_transitions() {
        let pda = parse_spec("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\n").unwrap();
        assert!(pda.transitions().is_empty());
    }

    #[test]
    fn level_zero_is_semantic_error_with_line() {
        let text = SMALL.replace("q1 a   Z   -> q1 pop1", "q0 eps Z -> q0 push0 F");
        let err = parse_spec(&text).unwrap_err();
        assert_eq!(err.line, 9);
        assert_eq!(
            err.kind,
            ParseErrorKind::Semantic(DefinitionError::LevelOutOfRange { level: 0, levels: 2 })
        );
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let cases = [
            ("states q0\n", 1),
            ("itpda x\n", 1),
            ("itpda 1\nstates q0\nbogus\n", 3),
            ("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\nq0 a Z -> q0 pop1 Z\n", 6),
            ("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\nq0 a Z -> q0 push1\n", 6),
            ("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\nq0 a Z, -> q0 pop1\n", 6),
            ("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\nq0 a Z -> q0 swap1\n", 6),
            ("itpda 1\nstates q0\ninput a\nstack Z\ninit q0 Z\nq0 a Z -> q0 pop1\nstates q1\n", 7),
        ];
        for (text, line) in cases {
            let err = parse_spec(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}: {err}");
            assert!(matches!(err.kind, ParseErrorKind::Syntax(_)), "{err}");
        }
    }

    #[test]
    fn missing_header_line() {
        let err = parse_spec("itpda 1\nstates q0\ninput a\ninit q0 Z\n").unwrap_err();
        assert!(err.to_string().contains("stack"), "{err}");
    }

    #[test]
    fn unknown_names_are_semantic() {
        let text = SMALL.replace("q1 a   Z   -> q1 pop1", "q1 a Y -> q1 pop1");
        let err = parse_spec(&text).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Semantic(DefinitionError::UnknownSymbol("Y".into())));
    }

    #[test]
    fn store_text() {
        let pda = parse_spec(SMALL).unwrap();
        for text in ["ε", "Z[]", "Z[F[].F[]]", "Z[F[]].F[].Z[Z[]]"] {
            let store = parse_store(&pda, text).unwrap();
            assert_eq!(pda.render_store(&store), text);
        }
        assert!(parse_store(&pda, "Z[").is_err());
        assert!(parse_store(&pda, "Z[]x").is_err());
        assert!(parse_store(&pda, "Q[]").is_err());
    }
}
