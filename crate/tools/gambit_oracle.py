"""Builds the trust and one-card poker games with pygambit and writes Gambit's own .efg
output to fixtures/oracle/. Also usable as `gambit_oracle.py check FILE`,
which parses FILE with Gambit and re-emits it on stdout, and as
`gambit_oracle.py features FILE...`, which prints Gambit's view of each
game as one JSON object per line."""
import json
import sys
from pathlib import Path

import pygambit as gbt


def at(node, *path):
    for i in path:
        node = list(node.children)[i]
    return node


def trust():
    g = gbt.Game.new_tree(players=["Buyer", "Seller"], title="One-shot trust game")
    g.append_move(g.root, "Buyer", ["Trust", "Not trust"])
    g.append_move(at(g.root, 0), "Seller", ["Honor", "Abuse"])
    g.set_outcome(at(g.root, 0, 0), g.add_outcome(payoffs=[1, 1], label="Trustworthy"))
    g.set_outcome(at(g.root, 0, 1), g.add_outcome(payoffs=[-1, 2], label="Untrustworthy"))
    g.set_outcome(at(g.root, 1), g.add_outcome(payoffs=[0, 0], label="Opt-out"))
    return g


def one_card_poker():
    g = gbt.Game.new_tree(players=["Alice", "Bob"], title="One card poker game")
    g.append_move(g.root, g.players.chance, ["King", "Queen"])
    for node in g.root.children:
        g.append_move(node, "Alice", ["Raise", "Fold"])
    g.append_move(at(g.root, 0, 0), "Bob", ["Meet", "Pass"])
    g.append_move(at(g.root, 1, 0), "Bob", ["Meet", "Pass"])
    g.set_infoset(at(g.root, 0, 0), at(g.root, 1, 0).infoset)
    alice_winsbig = g.add_outcome(payoffs=[2, -2], label="Alice wins big")
    alice_wins = g.add_outcome(payoffs=[1, -1], label="Alice wins")
    bob_winsbig = g.add_outcome(payoffs=[-2, 2], label="Bob wins big")
    bob_wins = g.add_outcome(payoffs=[-1, 1], label="Bob wins")
    g.set_outcome(at(g.root, 0, 0, 0), alice_winsbig)
    g.set_outcome(at(g.root, 0, 0, 1), alice_wins)
    g.set_outcome(at(g.root, 0, 1), bob_wins)
    g.set_outcome(at(g.root, 1, 0, 0), bob_winsbig)
    g.set_outcome(at(g.root, 1, 0, 1), alice_wins)
    g.set_outcome(at(g.root, 1, 1), bob_wins)
    return g


if __name__ == "__main__":
    if len(sys.argv) == 3 and sys.argv[1] == "check":
        sys.stdout.write(gbt.read_efg(sys.argv[2]).to_efg())
        sys.exit(0)
    if len(sys.argv) >= 3 and sys.argv[1] == "features":
        for f in sys.argv[2:]:
            g = gbt.read_efg(f)
            nodes = list(g.nodes)
            print(json.dumps({
                "file": f,
                "nPlayers": len(g.players),
                "nDecisionNodes": sum(1 for n in nodes if not n.is_terminal),
                "nLeaves": sum(1 for n in nodes if n.is_terminal),
                "perfectRecall": g.is_perfect_recall,
                "constSum": g.is_const_sum,
            }))
        sys.exit(0)
    out = Path(__file__).resolve().parent.parent / "fixtures" / "oracle"
    out.mkdir(parents=True, exist_ok=True)
    (out / "trust.efg").write_text(trust().to_efg())
    (out / "one_card_poker.efg").write_text(one_card_poker().to_efg())
