"""Transcribes the game descriptions of a markdown source into
corpus/<id>/description.txt.

Usage: python3 tools/transcribe_corpus.py SOURCE.md corpus/
"""
import re
import sys
from pathlib import Path

IDS = {
    "A Three-Player Game": "three_player",
    "An Imperfect Recall Game": "imperfect_recall",
    "Absent-Minded Driver": "absent_minded_driver",
    "Bach or Stravinsky": "bach_or_stravinsky",
    "Bagwell": "bagwell",
    "Centipede": "centipede",
    "Colonial Control": "colonial_control",
    "Kuhn Poker": "kuhn_poker",
    "Extra Game One": "extra_game_one",
    "Extra Game Two": "extra_game_two",
    "Extra Game Three": "extra_game_three",
    "Market Entry Model": "market_entry",
    "Market Signalling Game": "market_signalling",
    "Nim (with five in one pile)": "nim_five",
    "Nuclear Crisis": "nuclear_crisis",
    "Rock, Paper, Scissors": "rock_paper_scissors",
    "Simple Bargaining Game": "simple_bargaining",
    "Tic-Tac-Toe": "tic_tac_toe",
}


def sections(text):
    start = text.index("\\section{Game Descriptions}")
    end = text.index("\\lstset", start)
    body = text[start:end]
    parts = re.split(r"^\\subsection\{(.*)\}\s*$", body, flags=re.M)
    for title, content in zip(parts[1::2], parts[2::2]):
        title = re.sub(r"\s*~?\\cite\{[^}]*\}", "", title).strip()
        yield title, content


def clean(content):
    lines = []
    for raw in content.splitlines():
        if raw.strip().startswith("\\label"):
            continue
        lead = len(raw) - len(raw.lstrip(" "))
        line = raw.strip()
        line = re.sub(r"\s*\\footnote\{[^}]*\}", "", line)
        line = re.sub(r"^\\hspace\*\{[^}]*\}\s*", "", line)
        line = re.sub(r"\s*\\hspace\*\{[^}]*\}\s*", " ", line)
        line = re.sub(r"\\\\$", "", line).rstrip()
        line = line.replace("``", '"').replace("''", '"').replace("\\%", "%")
        lines.append((lead, line))
    unit = min((lead for lead, l in lines if lead and l), default=1)
    out = ["  " * round(lead / unit) + l if l else "" for lead, l in lines]
    text = "\n".join(out).strip()
    return re.sub(r"\n{3,}", "\n\n", text) + "\n"


def main():
    source, corpus = Path(sys.argv[1]), Path(sys.argv[2])
    found = dict(sections(source.read_text()))
    missing = set(IDS) - set(found)
    if missing:
        sys.exit(f"sections not found: {sorted(missing)}")
    for title, gid in IDS.items():
        d = corpus / gid
        d.mkdir(parents=True, exist_ok=True)
        (d / "description.txt").write_text(clean(found[title]))


if __name__ == "__main__":
    main()
