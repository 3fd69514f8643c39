//! The mutable extensive-form game and its six builder primitives.
//!
//! Nodes, information sets and outcomes live in arenas owned by [`Game`];
//! callers hold the opaque handles [`NodeId`], [`InfosetId`] and
//! [`OutcomeId`]. Outside the library, nodes are addressed by [`NodePath`]
//! (child indices from the root), which is what error messages and
//! validation reports print.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::GameError;
use crate::rational::Rational;

/// The owner of a decision node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Chance,
    /// 1-based index into the declared player list.
    Personal(usize),
}

impl Player {
    pub fn is_chance(self) -> bool {
        matches!(self, Player::Chance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InfosetId(pub(crate) usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeId(pub(crate) usize);

impl OutcomeId {
    /// 1-based registration number.
    pub fn number(self) -> usize {
        self.0 + 1
    }
}

/// Canonical node address: child indices from the root, written
/// `root`, `root.0`, `root.0.1`, ...
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn root() -> Self {
        NodePath(Vec::new())
    }

    pub fn child(&self, index: usize) -> Self {
        let mut segments = self.0.clone();
        segments.push(index);
        NodePath(segments)
    }

    pub fn segments(&self) -> &[usize] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for s in &self.0 {
            write!(f, ".{s}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for NodePath {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid node path `{0}`: expected `root` followed by `.<child index>` segments")]
pub struct ParsePathError(pub String);

impl FromStr for NodePath {
    type Err = ParsePathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split('.');
        if parts.next() != Some("root") {
            return Err(ParsePathError(s.to_string()));
        }
        parts
            .map(|p| {
                if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(ParsePathError(s.to_string()));
                }
                p.parse::<usize>().map_err(|_| ParsePathError(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(NodePath)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct NodeData {
    pub(crate) label: String,
    pub(crate) parent: Option<NodeId>,
    pub(crate) children: Vec<NodeId>,
    pub(crate) infoset: Option<InfosetId>,
    pub(crate) outcome: Option<OutcomeId>,
}

/// A group of one owner's decision nodes that share the same moves.
#[derive(Debug, Clone)]
pub struct Infoset {
    pub(crate) owner: Player,
    pub(crate) label: String,
    pub(crate) actions: Vec<String>,
    pub(crate) members: Vec<NodeId>,
    pub(crate) probs: Option<Vec<Rational>>,
}

impl Infoset {
    pub fn owner(&self) -> Player {
        self.owner
    }
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn actions(&self) -> &[String] {
        &self.actions
    }
    /// Members in the order they joined.
    pub fn members(&self) -> &[NodeId] {
        &self.members
    }
    /// Move probabilities; present only for chance infosets.
    pub fn chance_probs(&self) -> Option<&[Rational]> {
        self.probs.as_deref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub(crate) label: String,
    pub(crate) payoffs: Vec<Rational>,
}

impl Outcome {
    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn payoffs(&self) -> &[Rational] {
        &self.payoffs
    }
}

/// An extensive-form game under construction.
#[derive(Debug, Clone)]
pub struct Game {
    pub(crate) title: String,
    pub(crate) comment: String,
    pub(crate) players: Vec<String>,
    pub(crate) nodes: Vec<NodeData>,
    pub(crate) infosets: Vec<Option<Infoset>>,
    pub(crate) outcomes: Vec<Outcome>,
}

impl Game {
    /// A game with the given players whose tree is a single terminal root.
    pub fn new_tree<S: AsRef<str>>(players: &[S], title: &str) -> Result<Game, GameError> {
        if players.is_empty() {
            return Err(GameError::EmptyPlayerList);
        }
        let mut names: Vec<String> = Vec::with_capacity(players.len());
        for p in players {
            let p = p.as_ref();
            if names.iter().any(|n| n == p) {
                return Err(GameError::DuplicatePlayerName(p.to_string()));
            }
            names.push(p.to_string());
        }
        Ok(Game {
            title: title.to_string(),
            comment: String::new(),
            players: names,
            nodes: vec![NodeData {
                label: String::new(),
                parent: None,
                children: Vec::new(),
                infoset: None,
                outcome: None,
            }],
            infosets: Vec::new(),
            outcomes: Vec::new(),
        })
    }

    pub fn title(&self) -> &str {
        &self.title
    }

    pub fn set_title(&mut self, title: &str) {
        self.title = title.to_string();
    }

    pub fn comment(&self) -> &str {
        &self.comment
    }

    pub fn set_comment(&mut self, comment: &str) {
        self.comment = comment.to_string();
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn num_players(&self) -> usize {
        self.players.len()
    }

    /// Looks a player up by name; `chance` is not a name, use
    /// [`Player::Chance`].
    pub fn player_named(&self, name: &str) -> Result<Player, GameError> {
        self.players
            .iter()
            .position(|p| p == name)
            .map(|i| Player::Personal(i + 1))
            .ok_or_else(|| GameError::UnknownPlayer(name.to_string()))
    }

    pub fn player_name(&self, player: Player) -> &str {
        match player {
            Player::Chance => "chance",
            Player::Personal(i) => &self.players[i - 1],
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains_node(&self, node: NodeId) -> bool {
        node.0 < self.nodes.len()
    }

    fn data(&self, node: NodeId) -> Result<&NodeData, GameError> {
        self.nodes.get(node.0).ok_or(GameError::UnknownNode)
    }

    pub fn children(&self, node: NodeId) -> &[NodeId] {
        &self.nodes[node.0].children
    }

    pub fn child(&self, node: NodeId, index: usize) -> Option<NodeId> {
        self.nodes.get(node.0)?.children.get(index).copied()
    }

    pub fn parent(&self, node: NodeId) -> Option<NodeId> {
        self.nodes[node.0].parent
    }

    pub fn is_terminal(&self, node: NodeId) -> bool {
        self.nodes[node.0].children.is_empty()
    }

    pub fn node_label(&self, node: NodeId) -> &str {
        &self.nodes[node.0].label
    }

    pub fn set_node_label(&mut self, node: NodeId, label: &str) -> Result<(), GameError> {
        self.data(node)?;
        self.nodes[node.0].label = label.to_string();
        Ok(())
    }

    pub fn infoset_of(&self, node: NodeId) -> Option<InfosetId> {
        self.nodes[node.0].infoset
    }

    pub fn outcome_of(&self, node: NodeId) -> Option<OutcomeId> {
        self.nodes[node.0].outcome
    }

    /// The owner of a decision node; `None` for terminal nodes.
    pub fn owner_of(&self, node: NodeId) -> Option<Player> {
        self.infoset_of(node).map(|i| self.infoset(i).owner)
    }

    /// Action labels of the moves at `node` (empty for terminal nodes).
    pub fn actions_at(&self, node: NodeId) -> &[String] {
        match self.infoset_of(node) {
            Some(i) => &self.infoset(i).actions,
            None => &[],
        }
    }

    pub fn infoset(&self, id: InfosetId) -> &Infoset {
        self.infosets[id.0].as_ref().expect("infoset was removed")
    }

    pub fn set_infoset_label(&mut self, id: InfosetId, label: &str) -> Result<(), GameError> {
        let iset = self
            .infosets
            .get_mut(id.0)
            .and_then(Option::as_mut)
            .ok_or(GameError::UnknownInfoset)?;
        iset.label = label.to_string();
        Ok(())
    }

    /// Live information sets in creation order.
    pub fn infosets(&self) -> impl Iterator<Item = (InfosetId, &Infoset)> {
        self.infosets
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.as_ref().map(|s| (InfosetId(i), s)))
    }

    pub fn outcome(&self, id: OutcomeId) -> &Outcome {
        &self.outcomes[id.0]
    }

    /// All registered outcomes, attached or not, in registration order.
    pub fn outcomes(&self) -> impl Iterator<Item = (OutcomeId, &Outcome)> {
        self.outcomes.iter().enumerate().map(|(i, o)| (OutcomeId(i), o))
    }

    /// Nodes in depth-first pre-order, children in action order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root()];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(self.children(n).iter().rev().copied());
        }
        out
    }

    pub fn path_of(&self, node: NodeId) -> NodePath {
        let mut segments = Vec::new();
        let mut cur = node;
        while let Some(parent) = self.parent(cur) {
            let idx = self.children(parent).iter().position(|&c| c == cur).unwrap();
            segments.push(idx);
            cur = parent;
        }
        segments.reverse();
        NodePath(segments)
    }

    pub fn resolve(&self, path: &NodePath) -> Result<NodeId, GameError> {
        let mut cur = self.root();
        for (i, &seg) in path.0.iter().enumerate() {
            cur = self.child(cur, seg).ok_or_else(|| GameError::UnresolvedPath {
                path: path.to_string(),
                segment: i + 1,
            })?;
        }
        Ok(cur)
    }

    fn check_player(&self, player: Player) -> Result<(), GameError> {
        match player {
            Player::Chance => Ok(()),
            Player::Personal(i) if i >= 1 && i <= self.players.len() => Ok(()),
            Player::Personal(i) => Err(GameError::UnknownPlayer(format!("#{i}"))),
        }
    }

    /// Adds a move for `player` at each of `nodes`, which must all be
    /// terminal. Every listed node gets one fresh terminal child per action
    /// and all of them join a single new information set. Chance moves
    /// start out uniformly distributed.
    pub fn append_move<S: AsRef<str>>(
        &mut self,
        nodes: &[NodeId],
        player: Player,
        actions: &[S],
    ) -> Result<InfosetId, GameError> {
        if nodes.is_empty() {
            return Err(GameError::EmptyNodeList);
        }
        if actions.is_empty() {
            return Err(GameError::EmptyActionList);
        }
        self.check_player(player)?;
        for (i, &n) in nodes.iter().enumerate() {
            self.data(n)?;
            if !self.is_terminal(n) {
                return Err(GameError::NodeNotTerminal);
            }
            if nodes[..i].contains(&n) {
                return Err(GameError::DuplicateNode);
            }
        }

        let id = InfosetId(self.infosets.len());
        let probs = player.is_chance().then(|| {
            let n = actions.len() as i64;
            vec![Rational::new(1, n); actions.len()]
        });
        self.infosets.push(Some(Infoset {
            owner: player,
            label: String::new(),
            actions: actions.iter().map(|a| a.as_ref().to_string()).collect(),
            members: nodes.to_vec(),
            probs,
        }));
        for &n in nodes {
            let mut kids = Vec::with_capacity(actions.len());
            for _ in actions {
                kids.push(NodeId(self.nodes.len()));
                self.nodes.push(NodeData {
                    label: String::new(),
                    parent: Some(n),
                    children: Vec::new(),
                    infoset: None,
                    outcome: None,
                });
            }
            let data = &mut self.nodes[n.0];
            data.children = kids;
            data.infoset = Some(id);
            // The outcome stays registered but no longer sits on this node.
            data.outcome = None;
        }
        Ok(id)
    }

    /// Registers a new outcome; it is not attached to any node yet.
    pub fn add_outcome(&mut self, payoffs: Vec<Rational>, label: &str) -> Result<OutcomeId, GameError> {
        if payoffs.len() != self.players.len() {
            return Err(GameError::PayoffArityMismatch {
                expected: self.players.len(),
                got: payoffs.len(),
            });
        }
        self.outcomes.push(Outcome { label: label.to_string(), payoffs });
        Ok(OutcomeId(self.outcomes.len() - 1))
    }

    /// Attaches `outcome` to `node`, or detaches with `None`.
    pub fn set_outcome(&mut self, node: NodeId, outcome: Option<OutcomeId>) -> Result<(), GameError> {
        self.data(node)?;
        if let Some(o) = outcome {
            if o.0 >= self.outcomes.len() {
                return Err(GameError::UnknownOutcome);
            }
        }
        self.nodes[node.0].outcome = outcome;
        Ok(())
    }

    /// Replaces the distribution of a chance information set.
    pub fn set_chance_probs(&mut self, infoset: InfosetId, probs: Vec<Rational>) -> Result<(), GameError> {
        let iset = self
            .infosets
            .get_mut(infoset.0)
            .and_then(Option::as_mut)
            .ok_or(GameError::UnknownInfoset)?;
        if !iset.owner.is_chance() {
            return Err(GameError::NotChanceInfoset);
        }
        if probs.len() != iset.actions.len() {
            return Err(GameError::ProbArityMismatch {
                expected: iset.actions.len(),
                got: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return Err(GameError::NegativeProbability(p.clone()));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(GameError::ProbsNotNormalized(total));
        }
        iset.probs = Some(probs);
        Ok(())
    }

    /// Moves `node` into `target`. The node must already have a move with
    /// as many children as `target` has actions, and the same owner. Its
    /// previous information set is discarded if this empties it.
    pub fn set_infoset(&mut self, node: NodeId, target: InfosetId) -> Result<(), GameError> {
        self.data(node)?;
        let target_set = self
            .infosets
            .get(target.0)
            .and_then(Option::as_ref)
            .ok_or(GameError::UnknownInfoset)?;
        let current = self.nodes[node.0].infoset.ok_or(GameError::NodeNotInternal)?;
        if current == target {
            return Ok(());
        }
        if self.infoset(current).owner != target_set.owner {
            return Err(GameError::OwnerMismatch);
        }
        if self.nodes[node.0].children.len() != target_set.actions.len() {
            return Err(GameError::ChildCountMismatch);
        }

        let old = self.infosets[current.0].as_mut().unwrap();
        old.members.retain(|&m| m != node);
        if old.members.is_empty() {
            self.infosets[current.0] = None;
        }
        self.infosets[target.0].as_mut().unwrap().members.push(node);
        self.nodes[node.0].infoset = Some(target);
        Ok(())
    }

    /// An immutable, cheaply clonable snapshot that can be shared across
    /// threads.
    pub fn freeze(self) -> FrozenGame {
        FrozenGame(Arc::new(self))
    }
}

/// A completed game that no longer changes.
#[derive(Debug, Clone)]
pub struct FrozenGame(Arc<Game>);

impl Deref for FrozenGame {
    type Target = Game;
    fn deref(&self) -> &Game {
        &self.0
    }
}

impl FrozenGame {
    /// A mutable copy, e.g. to continue editing.
    pub fn thaw(&self) -> Game {
        (*self.0).clone()
    }
}
