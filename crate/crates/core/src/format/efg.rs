//! Reader and writer for Gambit's native extensive-form (`.efg`, version 2)
//! format.
//!
//! The writer emits one canonical form:
//!
//! ```text
//! EFG 2 R "<title>" { "<player 1>" "<player 2>" }
//! "<comment>"
//!
//! p "<label>" <player#> <iset#> "<iset label>" { "<a1>" "<a2>" } <out#>
//! c "<label>" <iset#> "<iset label>" { "<a1>" <p1> "<a2>" <p2> } <out#>
//! t "<label>" <out#> "<out label>" { <v1>, <v2> }
//! ```
//!
//! Nodes appear in depth-first pre-order. Information-set numbers count per
//! owner from 1 in order of first appearance. Outcomes attached to some node
//! are numbered from 1 in registration order, as Gambit does; outcomes that
//! no node uses cannot be expressed and are dropped. Outcome `0` means none.
//! The full information-set body is repeated at every member and the outcome
//! body at every use.
//!
//! Inside strings a double quote is written `\\"`; backslashes are
//! otherwise literal, as in Gambit. A label that ends with a backslash
//! therefore cannot be written unambiguously.
//!
//! The reader is more tolerant: it accepts `R` or `D` headers, CRLF line
//! endings, comma- or space-separated payoffs, decimal numbers, and omitted
//! bodies on repeated information sets and outcomes (checking consistency
//! where a body is repeated).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::game::{Game, InfosetId, NodeId, OutcomeId, Player};
use crate::rational::Rational;
use crate::validate::ensure_valid;
use crate::GameError;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        if ch == '"' {
            out.push('\\');
        }
        out.push(ch);
    }
    out.push('"');
    out
}

/// Serializes a structurally valid game. Output is deterministic: the same
/// game always yields byte-identical text.
pub fn write_efg(game: &Game) -> Result<String, GameError> {
    ensure_valid(game)?;

    let mut out = String::new();
    let players: Vec<String> = game.players().iter().map(|p| quote(p)).collect();
    let _ = writeln!(out, "EFG 2 R {} {{ {} }}", quote(game.title()), players.join(" "));
    let _ = writeln!(out, "{}", quote(game.comment()));
    out.push('\n');

    let mut iset_numbers: HashMap<InfosetId, usize> = HashMap::new();
    let mut per_owner: HashMap<Player, usize> = HashMap::new();
    let mut used: Vec<OutcomeId> = game.preorder().into_iter().filter_map(|n| game.outcome_of(n)).collect();
    used.sort();
    used.dedup();
    let outcome_numbers: HashMap<OutcomeId, usize> = used.into_iter().zip(1..).collect();

    for node in game.preorder() {
        let label = quote(game.node_label(node));
        match game.infoset_of(node) {
            None => {
                let _ = write!(out, "t {label} ");
            }
            Some(iset_id) => {
                let iset = game.infoset(iset_id);
                let number = *iset_numbers.entry(iset_id).or_insert_with(|| {
                    let counter = per_owner.entry(iset.owner()).or_insert(0);
                    *counter += 1;
                    *counter
                });
                match iset.owner() {
                    Player::Chance => {
                        let _ = write!(out, "c {label} {number} {} {{ ", quote(iset.label()));
                        let probs = iset.chance_probs().expect("validated chance infoset");
                        for (action, p) in iset.actions().iter().zip(probs) {
                            let _ = write!(out, "{} {p} ", quote(action));
                        }
                    }
                    Player::Personal(pl) => {
                        let _ = write!(out, "p {label} {pl} {number} {} {{ ", quote(iset.label()));
                        for action in iset.actions() {
                            let _ = write!(out, "{} ", quote(action));
                        }
                    }
                }
                out.push_str("} ");
            }
        }
        match game.outcome_of(node) {
            None => out.push_str("0\n"),
            Some(o) => {
                let number = outcome_numbers[&o];
                let outcome = game.outcome(o);
                let payoffs: Vec<String> = outcome.payoffs().iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{number} {} {{ {} }}", quote(outcome.label()), payoffs.join(", "));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}: {what} is redefined inconsistently")]
    InconsistentRedefinition { line: usize, what: String },
    #[error("line {line}: {what} is referenced but never defined")]
    DanglingReference { line: usize, what: String },
    #[error("line {line}: chance probabilities sum to {sum}, not 1")]
    ProbsNotNormalized { line: usize, sum: String },
    #[error("line {line}: {source}")]
    Game { line: usize, source: GameError },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::InconsistentRedefinition { line, .. }
            | ParseError::DanglingReference { line, .. }
            | ParseError::ProbsNotNormalized { line, .. }
            | ParseError::Game { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Str(String),
    Word(String),
    Open,
    Close,
    Comma,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&ch) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let bump = |c: char, line: &mut usize, column: &mut usize| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        match ch {
            c if c.is_whitespace() => {
                chars.next();
                bump(c, &mut line, &mut column);
            }
            '{' | '}' | ',' => {
                chars.next();
                bump(ch, &mut line, &mut column);
                let tok = match ch {
                    '{' => Tok::Open,
                    '}' => Tok::Close,
                    _ => Tok::Comma,
                };
                tokens.push(Token { tok, line: start_line, column: start_col });
            }
            '"' => {
                chars.next();
                bump(ch, &mut line, &mut column);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => {
                            return Err(ParseError::Syntax {
                                line: start_line,
                                column: start_col,
                                message: "unterminated string".into(),
                            })
                        }
                        Some('"') => {
                            bump('"', &mut line, &mut column);
                            break;
                        }
                        Some('\\') => {
                            bump('\\', &mut line, &mut column);
                            if chars.peek() == Some(&'"') {
                                chars.next();
                                bump('"', &mut line, &mut column);
                                s.push('"');
                            } else {
                                s.push('\\');
                            }
                        }
                        Some(c) => {
                            bump(c, &mut line, &mut column);
                            s.push(c);
                        }
                    }
                }
                tokens.push(Token { tok: Tok::Str(s), line: start_line, column: start_col });
            }
            _ => {
                let mut w = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '{' | '}' | ',' | '"') {
                        break;
                    }
                    chars.next();
                    bump(c, &mut line, &mut column);
                    w.push(c);
                }
                tokens.push(Token { tok: Tok::Word(w), line: start_line, column: start_col });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    game: Game,
    infosets: HashMap<(Player, usize), (InfosetId, usize)>,
    /// Outcome number to (payoffs, label); registered in ascending number
    /// order once the whole tree is read.
    outcomes: BTreeMap<usize, (Vec<Rational>, String)>,
    outcome_uses: Vec<(NodeId, usize, usize)>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos).or(self.tokens.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        }
    }

    fn line(&self) -> usize {
        self.here().0
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax { line, column, message: message.into() })
    }

    fn describe(tok: Option<&Tok>) -> String {
        match tok {
            None => "end of file".into(),
            Some(Tok::Str(s)) => format!("string {s:?}"),
            Some(Tok::Word(w)) => format!("`{w}`"),
            Some(Tok::Open) => "`{`".into(),
            Some(Tok::Close) => "`}`".into(),
            Some(Tok::Comma) => "`,`".into(),
        }
    }

    fn string(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            other => self.syntax(format!("expected {what} (a quoted string), found {}", Self::describe(other))),
        }
    }

    fn opt_string(&mut self) -> Option<String> {
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Some(s)
            }
            _ => None,
        }
    }

    fn word(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            other => self.syntax(format!("expected {what}, found {}", Self::describe(other))),
        }
    }

    fn number(&mut self, what: &str) -> Result<usize, ParseError> {
        let w = self.word(what)?;
        w.parse().or_else(|_| {
            self.pos -= 1;
            self.syntax(format!("expected {what}, found `{w}`"))
        })
    }

    fn rational(&mut self, what: &str) -> Result<Rational, ParseError> {
        let w = self.word(what)?;
        w.parse().or_else(|_| {
            self.pos -= 1;
            self.syntax(format!("expected {what}, found `{w}`"))
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            let found = Self::describe(self.peek());
            self.syntax(format!("expected {}, found {found}", Self::describe(Some(&tok))))
        }
    }

    fn header(text: &str) -> Result<Parser, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            game: Game::new_tree(&["_"], "").unwrap(),
            infosets: HashMap::new(),
            outcomes: BTreeMap::new(),
            outcome_uses: Vec::new(),
        };
        if p.word("`EFG`")? != "EFG" {
            p.pos -= 1;
            return p.syntax("file must start with `EFG`");
        }
        if p.word("format version")? != "2" {
            p.pos -= 1;
            return p.syntax("unsupported format version; only version 2 is read");
        }
        match p.word("`R` or `D`")?.as_str() {
            "R" | "D" => {}
            _ => {
                p.pos -= 1;
                return p.syntax("expected `R` or `D` after the version");
            }
        }
        let title = p.string("game title")?;
        p.expect(Tok::Open)?;
        let mut players = Vec::new();
        while let Some(Tok::Str(_)) = p.peek() {
            players.push(p.string("player name")?);
        }
        p.expect(Tok::Close)?;
        let line = p.line();
        p.game = Game::new_tree(&players, &title).map_err(|source| ParseError::Game { line, source })?;
        if let Some(comment) = p.opt_string() {
            p.game.set_comment(&comment);
        }
        Ok(p)
    }

    fn payoffs(&mut self) -> Result<Vec<Rational>, ParseError> {
        self.expect(Tok::Open)?;
        let mut values = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Comma) => self.pos += 1,
                _ => values.push(self.rational("payoff value")?),
            }
        }
        if values.len() != self.game.num_players() {
            self.pos -= 1;
            return self.syntax(format!(
                "expected {} payoffs (one per player), found {}",
                self.game.num_players(),
                values.len()
            ));
        }
        Ok(values)
    }

    fn outcome_part(&mut self, node: NodeId) -> Result<(), ParseError> {
        let line = self.line();
        let number = self.number("outcome number")?;
        let label = self.opt_string();
        let body = if self.peek() == Some(&Tok::Open) { Some(self.payoffs()?) } else { None };
        if number == 0 {
            if body.is_some() {
                return Err(ParseError::Syntax { line, column: 1, message: "outcome 0 cannot carry payoffs".into() });
            }
            return Ok(());
        }
        match (self.outcomes.get(&number), body) {
            (Some((payoffs, existing_label)), Some(new_payoffs)) => {
                let label_clash = matches!(&label, Some(l) if !l.is_empty() && l != existing_label);
                if *payoffs != new_payoffs || label_clash {
                    return Err(ParseError::InconsistentRedefinition { line, what: format!("outcome {number}") });
                }
            }
            (None, Some(payoffs)) => {
                self.outcomes.insert(number, (payoffs, label.unwrap_or_default()));
            }
            (_, None) => {}
        }
        self.outcome_uses.push((node, number, line));
        Ok(())
    }

    fn node(&mut self, node: NodeId) -> Result<(), ParseError> {
        let line = self.line();
        let kind = self.word("node type `c`, `p` or `t`")?;
        let label = self.string("node label")?;
        self.game.set_node_label(node, &label).unwrap();
        let owner = match kind.as_str() {
            "t" => return self.outcome_part(node),
            "c" => Player::Chance,
            "p" => {
                let pl = self.number("player number")?;
                if pl == 0 || pl > self.game.num_players() {
                    self.pos -= 1;
                    return self.syntax(format!("player number {pl} is out of range"));
                }
                Player::Personal(pl)
            }
            other => {
                self.pos -= 2;
                return self.syntax(format!("unknown node type `{other}`; expected `c`, `p` or `t`"));
            }
        };
        let iset_number = self.number("information set number")?;
        let iset_label = self.opt_string();
        let body = if self.peek() == Some(&Tok::Open) { Some(self.infoset_body(owner)?) } else { None };
        let key = (owner, iset_number);
        let what = || match owner {
            Player::Chance => format!("chance information set {iset_number}"),
            Player::Personal(p) => format!("information set {iset_number} of player {p}"),
        };
        let map_game = |source| ParseError::Game { line, source };

        match self.infosets.get(&key).copied() {
            Some((id, _)) => {
                let existing = self.game.infoset(id);
                if let Some((actions, probs)) = &body {
                    let label_clash =
                        matches!(&iset_label, Some(l) if !l.is_empty() && l != existing.label());
                    if existing.actions() != actions.as_slice()
                        || (owner.is_chance() && existing.chance_probs() != probs.as_deref())
                        || label_clash
                    {
                        return Err(ParseError::InconsistentRedefinition { line, what: what() });
                    }
                }
                let actions = existing.actions().to_vec();
                self.game.append_move(&[node], owner, &actions).map_err(map_game)?;
                self.game.set_infoset(node, id).map_err(map_game)?;
            }
            None => {
                let Some((actions, probs)) = body else {
                    return Err(ParseError::DanglingReference { line, what: what() });
                };
                let id = self.game.append_move(&[node], owner, &actions).map_err(map_game)?;
                if let Some(label) = &iset_label {
                    self.game.set_infoset_label(id, label).map_err(map_game)?;
                }
                if let Some(probs) = probs {
                    self.game.set_chance_probs(id, probs).map_err(map_game)?;
                }
                self.infosets.insert(key, (id, line));
            }
        }

        self.outcome_part(node)?;
        let children = self.game.children(node).to_vec();
        for child in children {
            if self.peek().is_none() {
                return self.syntax("unexpected end of file: missing child node records");
            }
            self.node(child)?;
        }
        Ok(())
    }

    /// `{ "a1" "a2" ... }` for personal moves, `{ "a1" p1 "a2" p2 ... }` for
    /// chance moves.
    #[allow(clippy::type_complexity)]
    fn infoset_body(&mut self, owner: Player) -> Result<(Vec<String>, Option<Vec<Rational>>), ParseError> {
        let open_line = self.line();
        self.expect(Tok::Open)?;
        let mut actions = Vec::new();
        let mut probs = Vec::new();
        while self.peek() != Some(&Tok::Close) {
            actions.push(self.string("action label")?);
            if owner.is_chance() {
                let p = self.rational("action probability")?;
                if p.is_negative() {
                    self.pos -= 1;
                    return self.syntax(format!("negative probability {p}"));
                }
                probs.push(p);
            }
            if self.peek().is_none() {
                return self.syntax("unterminated action list");
            }
        }
        self.pos += 1;
        if actions.is_empty() {
            self.pos -= 1;
            return self.syntax("action list is empty");
        }
        if owner.is_chance() {
            let sum: Rational = probs.iter().sum();
            if !sum.is_one() {
                return Err(ParseError::ProbsNotNormalized { line: open_line, sum: sum.to_string() });
            }
            Ok((actions, Some(probs)))
        } else {
            Ok((actions, None))
        }
    }
}

/// Parses `.efg` text into a [`Game`].
pub fn parse_efg(text: &str) -> Result<Game, ParseError> {
    let mut p = Parser::header(text)?;
    if p.peek().is_none() {
        return p.syntax("missing root node record");
    }
    let root = p.game.root();
    p.node(root)?;
    if p.peek().is_some() {
        return p.syntax(format!("unexpected {} after the last node record", Parser::describe(p.peek())));
    }
    let mut ids = HashMap::new();
    for (number, (payoffs, label)) in std::mem::take(&mut p.outcomes) {
        let line = p.line();
        let id = p.game.add_outcome(payoffs, &label).map_err(|source| ParseError::Game { line, source })?;
        ids.insert(number, id);
    }
    for (node, number, line) in std::mem::take(&mut p.outcome_uses) {
        let Some(&id) = ids.get(&number) else {
            return Err(ParseError::DanglingReference { line, what: format!("outcome {number}") });
        };
        p.game.set_outcome(node, Some(id)).map_err(|source| ParseError::Game { line, source })?;
    }
    Ok(p.game)
}
