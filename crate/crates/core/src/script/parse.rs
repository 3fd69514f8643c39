use std::iter::Peekable;
use std::str::CharIndices;

use super::{Command, PlayerRef, Script, Statement};
use crate::game::NodePath;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptSyntaxError {
    pub line: usize,
    pub message: String,
}

const VERBS: &str = "new_tree, append_move, add_outcome, set_outcome, set_chance_probs, set_infoset";

#[derive(Debug, Clone)]
enum Value {
    Str(String),
    Bare(String),
    List(Vec<Value>),
}

impl Value {
    fn describe(&self) -> String {
        match self {
            Value::Str(s) => format!("string {}", super::quote(s)),
            Value::Bare(b) => format!("`{b}`"),
            Value::List(_) => "a list".into(),
        }
    }
}

struct Line<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
}

impl<'a> Line<'a> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        matches!(self.chars.peek(), None | Some((_, '#')))
    }

    fn bare(&mut self) -> String {
        let start = self.chars.peek().map_or(self.text.len(), |&(i, _)| i);
        let mut end = start;
        while let Some(&(i, c)) = self.chars.peek() {
            if c.is_whitespace() || matches!(c, ',' | '[' | ']' | '"' | '#' | '=') {
                break;
            }
            end = i + c.len_utf8();
            self.chars.next();
        }
        self.text[start..end].to_string()
    }

    fn string(&mut self) -> Result<String, String> {
        self.chars.next();
        let mut s = String::new();
        loop {
            match self.chars.next() {
                None => return Err("unterminated string".into()),
                Some((_, '"')) => return Ok(s),
                Some((_, '\\')) => match self.chars.next() {
                    Some((_, 'n')) => s.push('\n'),
                    Some((_, c)) => s.push(c),
                    None => return Err("unterminated string".into()),
                },
                Some((_, c)) => s.push(c),
            }
        }
    }

    fn value(&mut self, nested: bool) -> Result<Value, String> {
        match self.chars.peek().map(|&(_, c)| c) {
            Some('"') => self.string().map(Value::Str),
            Some('[') if nested => Err("lists cannot be nested".into()),
            Some('[') => {
                self.chars.next();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek().map(|&(_, c)| c) {
                        None | Some('#') => return Err("unterminated list: missing `]`".into()),
                        Some(']') => {
                            self.chars.next();
                            return Ok(Value::List(items));
                        }
                        Some(',') => {
                            self.chars.next();
                        }
                        _ => items.push(self.value(true)?),
                    }
                }
            }
            _ => {
                let b = self.bare();
                if b.is_empty() {
                    let found = self.chars.peek().map_or("end of line".to_string(), |&(_, c)| format!("`{c}`"));
                    Err(format!("expected a value, found {found}"))
                } else {
                    Ok(Value::Bare(b))
                }
            }
        }
    }
}

/// Named arguments of one command, consumed by the typed getters below.
struct Args {
    verb: &'static str,
    items: Vec<(String, Value)>,
}

impl Args {
    fn take(&mut self, key: &str) -> Option<Value> {
        let i = self.items.iter().position(|(k, _)| k == key)?;
        Some(self.items.remove(i).1)
    }

    fn required(&mut self, key: &str) -> Result<Value, String> {
        self.take(key).ok_or_else(|| format!("{} requires `{key}=`", self.verb))
    }

    fn finish(self) -> Result<(), String> {
        match self.items.first() {
            None => Ok(()),
            Some((k, _)) => Err(format!("{} does not take `{k}=`", self.verb)),
        }
    }
}

fn as_string(key: &str, v: Value) -> Result<String, String> {
    match v {
        Value::Str(s) => Ok(s),
        other => Err(format!("`{key}` must be a quoted string, found {}", other.describe())),
    }
}

fn as_list(key: &str, v: Value) -> Result<Vec<Value>, String> {
    match v {
        Value::List(items) => Ok(items),
        other => Err(format!("`{key}` must be a list in brackets, found {}", other.describe())),
    }
}

fn as_strings(key: &str, v: Value) -> Result<Vec<String>, String> {
    as_list(key, v)?
        .into_iter()
        .map(|item| match item {
            Value::Str(s) => Ok(s),
            other => Err(format!("`{key}` must contain quoted strings, found {}", other.describe())),
        })
        .collect()
}

fn as_rational(key: &str, v: Value) -> Result<Rational, String> {
    match &v {
        Value::Bare(b) => b
            .parse()
            .map_err(|_| format!("`{key}`: `{b}` is not a number; write integers, fractions like 1/3, or decimals")),
        other => Err(format!("`{key}` must contain numbers, found {}", other.describe())),
    }
}

fn as_rationals(key: &str, v: Value) -> Result<Vec<Rational>, String> {
    as_list(key, v)?.into_iter().map(|item| as_rational(key, item)).collect()
}

fn as_path(key: &str, v: Value) -> Result<NodePath, String> {
    match &v {
        Value::Bare(b) => b.parse().map_err(|_| {
            format!("`{key}`: `{b}` is not a node path; write `root` followed by child indices, e.g. root.0.1")
        }),
        other => Err(format!("`{key}` must be a node path such as root.0.1, found {}", other.describe())),
    }
}

fn as_ident(key: &str, v: Value) -> Result<String, String> {
    match &v {
        Value::Bare(b)
            if b.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && b.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') =>
        {
            Ok(b.clone())
        }
        other => Err(format!(
            "`{key}` must be an identifier (letters, digits, underscores), found {}",
            other.describe()
        )),
    }
}

fn verb_name(word: &str) -> Option<&'static str> {
    ["new_tree", "append_move", "add_outcome", "set_outcome", "set_chance_probs", "set_infoset"]
        .into_iter()
        .find(|v| *v == word)
}

fn parse_line(text: &str) -> Result<Option<Command>, String> {
    let mut line = Line { text, chars: text.char_indices().peekable() };
    if line.at_end() {
        return Ok(None);
    }
    let word = line.bare();
    let Some(verb) = verb_name(&word) else {
        let shown = if word.is_empty() { text.trim().to_string() } else { word };
        return Err(format!("unknown command `{shown}`; expected one of {VERBS}"));
    };

    let mut args = Args { verb, items: Vec::new() };
    while !line.at_end() {
        let key = line.bare();
        if key.is_empty() || !matches!(line.chars.peek(), Some((_, '='))) {
            let rest = text[line.chars.peek().map_or(text.len(), |&(i, _)| i)..].trim();
            let found = if key.is_empty() { rest.to_string() } else { key };
            return Err(format!("expected `key=value`, found `{found}`"));
        }
        line.chars.next();
        let value = line.value(false)?;
        if args.items.iter().any(|(k, _)| *k == key) {
            return Err(format!("`{key}=` is given more than once"));
        }
        args.items.push((key, value));
    }

    let command = match verb {
        "new_tree" => {
            let players = as_strings("players", args.required("players")?)?;
            let title = args.take("title").map(|v| as_string("title", v)).transpose()?.unwrap_or_default();
            args.finish()?;
            Command::NewTree { players, title }
        }
        "append_move" => {
            let nodes = match (args.take("node"), args.take("nodes")) {
                (Some(v), None) => vec![as_path("node", v)?],
                (None, Some(v)) => {
                    as_list("nodes", v)?.into_iter().map(|p| as_path("nodes", p)).collect::<Result<_, _>>()?
                }
                (Some(_), Some(_)) => return Err("append_move takes `node=` or `nodes=`, not both".into()),
                (None, None) => return Err("append_move requires `node=` or `nodes=`".into()),
            };
            let player = match args.required("player")? {
                Value::Bare(b) if b == "chance" => PlayerRef::Chance,
                Value::Str(s) => PlayerRef::Named(s),
                other => {
                    return Err(format!(
                        "`player` must be a quoted player name or `chance`, found {}",
                        other.describe()
                    ))
                }
            };
            let actions = as_strings("actions", args.required("actions")?)?;
            args.finish()?;
            Command::AppendMove { nodes, player, actions }
        }
        "add_outcome" => {
            let id = as_ident("id", args.required("id")?)?;
            if id == "none" {
                return Err("`none` is reserved and cannot be an outcome id".into());
            }
            let payoffs = as_rationals("payoffs", args.required("payoffs")?)?;
            let label = args.take("label").map(|v| as_string("label", v)).transpose()?.unwrap_or_default();
            args.finish()?;
            Command::AddOutcome { id, payoffs, label }
        }
        "set_outcome" => {
            let node = as_path("node", args.required("node")?)?;
            let outcome = as_ident("outcome", args.required("outcome")?)?;
            args.finish()?;
            Command::SetOutcome { node, outcome: (outcome != "none").then_some(outcome) }
        }
        "set_chance_probs" => {
            let node = as_path("node", args.required("node")?)?;
            let probs = as_rationals("probs", args.required("probs")?)?;
            args.finish()?;
            Command::SetChanceProbs { node, probs }
        }
        "set_infoset" => {
            let node = as_path("node", args.required("node")?)?;
            let like = as_path("like", args.required("like")?)?;
            args.finish()?;
            Command::SetInfoset { node, like }
        }
        _ => unreachable!(),
    };
    Ok(Some(command))
}

fn parse_lines(text: &str) -> Result<Vec<Statement>, ScriptSyntaxError> {
    let mut statements = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match parse_line(raw) {
            Ok(Some(command)) => statements.push(Statement { line, command }),
            Ok(None) => {}
            Err(message) => return Err(ScriptSyntaxError { line, message }),
        }
    }
    Ok(statements)
}

/// Parses a complete program. The first command must be `new_tree`, and it
/// may appear only once.
pub fn parse_script(text: &str) -> Result<Script, ScriptSyntaxError> {
    let statements = parse_lines(text)?;
    let Some(first) = statements.first() else {
        return Err(ScriptSyntaxError { line: 1, message: "script is empty; the first command must be new_tree".into() });
    };
    if !matches!(first.command, Command::NewTree { .. }) {
        return Err(ScriptSyntaxError { line: first.line, message: "first command must be new_tree".into() });
    }
    if let Some(again) = statements[1..].iter().find(|s| matches!(s.command, Command::NewTree { .. })) {
        return Err(ScriptSyntaxError { line: again.line, message: "new_tree may appear only once".into() });
    }
    Ok(Script { statements, source: text.to_string() })
}

/// Parses commands without the `new_tree` ordering rule, for snippets that
/// extend a game built elsewhere. An empty fragment is allowed.
pub fn parse_fragment(text: &str) -> Result<Script, ScriptSyntaxError> {
    Ok(Script { statements: parse_lines(text)?, source: text.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_program() {
        let s = parse_script("new_tree players=[\"A\",\"B\"] title=\"t\"\nappend_move node=root player=\"A\" actions=[\"x\",\"y\"]\n")
            .unwrap();
        assert_eq!(s.statements.len(), 2);
        assert_eq!(
            s.statements[1].command,
            Command::AppendMove {
                nodes: vec![NodePath::root()],
                player: PlayerRef::Named("A".into()),
                actions: vec!["x".into(), "y".into()],
            }
        );
    }

    #[test]
    fn ordering_rule() {
        let err = parse_script("append_move node=root player=\"A\" actions=[\"x\"]\n").unwrap_err();
        assert_eq!(err, ScriptSyntaxError { line: 1, message: "first command must be new_tree".into() });
        let err = parse_script("# header\n\nnew_tree players=[\"A\"]\nnew_tree players=[\"B\"]\n").unwrap_err();
        assert_eq!(err.line, 4);
        assert!(parse_fragment("set_infoset node=root.0 like=root.1").is_ok());
        assert!(parse_fragment("# nothing to do\n").unwrap().statements.is_empty());
    }

    #[test]
    fn probabilities_are_exact() {
        let s = parse_fragment("set_chance_probs node=root probs=[1/2,1/2]").unwrap();
        assert_eq!(
            s.statements[0].command,
            Command::SetChanceProbs { node: NodePath::root(), probs: vec![Rational::new(1, 2), Rational::new(1, 2)] }
        );
    }

    #[test]
    fn comments_and_line_numbers() {
        let text = "# c\nnew_tree players=[\"A\"] # trailing\n\n  add_outcome id=w payoffs=[1] label=\"a # b\"\n";
        let s = parse_script(text).unwrap();
        assert_eq!(s.statements.iter().map(|s| s.line).collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(
            s.statements[1].command,
            Command::AddOutcome { id: "w".into(), payoffs: vec![Rational::from(1)], label: "a # b".into() }
        );
    }

    #[test]
    fn error_messages() {
        let cases = [
            ("g.append_move(g.root)", "unknown command `g.append_move(g.root)`"),
            ("append_move node=root.x player=\"A\" actions=[\"a\"]", "is not a node path"),
            ("append_move node=root player=A actions=[\"a\"]", "quoted player name or `chance`"),
            ("append_move node=root nodes=[root] player=chance actions=[\"a\"]", "not both"),
            ("append_move node=root player=chance", "requires `actions=`"),
            ("add_outcome id=w payoffs=[1, x]", "`x` is not a number"),
            ("add_outcome id=w payoffs=[1] colour=\"red\"", "does not take `colour=`"),
            ("add_outcome id=none payoffs=[1]", "reserved"),
            ("set_outcome node=root node=root outcome=w", "more than once"),
            ("set_chance_probs node=root probs=[1/2", "unterminated list"),
            ("set_infoset node=root like", "expected `key=value`"),
            ("new_tree players=[[\"A\"]]", "cannot be nested"),
            ("new_tree players=[\"A] ", "unterminated string"),
        ];
        for (text, expected) in cases {
            let err = parse_fragment(text).unwrap_err();
            assert_eq!(err.line, 1);
            assert!(err.message.contains(expected), "{text}: {}", err.message);
        }
    }

    #[test]
    fn pretty_print_is_a_fixed_point() {
        let text = "new_tree players=[\"A\", \"B \\\"q\\\"\"]\n\
            append_move nodes=[root] player=chance actions=[\"h\",\"t\"]\n\
            append_move nodes=[root.0, root.1] player=\"A\" actions=[\"x\"]\n\
            set_chance_probs node=root probs=[0.25, 3/4]\n\
            add_outcome id=o payoffs=[ 1 , -2 ]\n\
            set_outcome node=root.0.0 outcome=none\n\
            set_infoset node=root.0 like=root.1\n";
        let once = parse_script(text).unwrap();
        let pretty = once.pretty();
        let twice = parse_script(&pretty).unwrap();
        assert_eq!(once.commands().collect::<Vec<_>>(), twice.commands().collect::<Vec<_>>());
        assert_eq!(twice.pretty(), pretty);
        assert!(pretty.contains("append_move node=root player=chance actions=[\"h\", \"t\"]"));
        assert!(pretty.contains("probs=[1/4, 3/4]"));
    }
}
