#!/usr/bin/env python3
"""Build the bundled POS lexicon (word<TAB>TAG<TAB>count) from Brill's lexicon.

Input is Brill's lexicon as a JSON object mapping word -> [penn tags], most
likely tag first (for example the `lexicon.js` of the npm `pos` package,
converted with
`node -e 'require("fs").writeFileSync("brill.json", JSON.stringify(require("./lexicon.js")))'`).

Penn tags are folded into the reduced tagset used by the tagger. Penn does
not separate the auxiliaries, articles or pronoun cases the way the Brown
tagset does, so closed-class words carry fixed Brown-style tags (see
CLOSED_CLASS below).

Brill's lexicon records tag order, not corpus frequencies. The count column
therefore holds a rank weight: the most likely tag of a word gets the highest
weight, and weights decrease by one per following distinct tag.

Usage: build_pos_lexicon.py brill.json > crates/core/lexicons/pos.tsv
"""

import json
import sys

PENN_TO_REDUCED = {
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "NN": "NN", "NNS": "NNS", "NNP": "NP", "NNPS": "NP",
    "IN": "IN",
    "RB": "RB", "RBR": "RB", "RBS": "RB", "RP": "RB",
    "MD": "MV",
    "VB": "VB", "VBP": "VB", "VBZ": "VB", "VBD": "VB",
    "VBN": "VPA", "VBG": "VPR",
    "CC": "CONJ",
    ",": "PUNCT", ".": "PUNCT", ":": "PUNCT", "(": "PUNCT", ")": "PUNCT",
    "``": "PUNCT", "''": "PUNCT", '"': "PUNCT", "#": "PUNCT", "$": "PUNCT",
}

# Brown-style tags for closed-class words.
CLOSED_CLASS = {
    "a": "ART", "an": "ART", "the": "ART", "no": "ART", "every": "ART",
    "have": "HAVE", "has": "HAVE", "had": "HAVE", "having": "HAVE", "'ve": "HAVE",
    "be": "BE", "am": "BE", "is": "BE", "are": "BE", "was": "BE", "were": "BE",
    "being": "BE", "'m": "BE", "'re": "BE",
    "been": "BEEN",
    "he": "PPS", "she": "PPS", "it": "PPS", "i": "PPS", "we": "PPS",
    "they": "PPS", "you": "PPS",
    "him": "PPO", "her": "PPO", "them": "PPO", "me": "PPO", "us": "PPO",
    "who": "WPS",
    "not": "NEG", "n't": "NEG",
    "because": "CONJ", "that": "CONJ", "if": "CONJ", "although": "CONJ",
    "though": "CONJ", "whether": "CONJ", "unless": "CONJ", "whereas": "CONJ",
    "while": "CONJ",
    "do": "VB", "does": "VB", "did": "VB",
    "to": "OTHER",
}


def reduce_tags(penn_tags):
    out = []
    for tag in penn_tags:
        if "|" in tag:
            continue
        reduced = PENN_TO_REDUCED.get(tag, "OTHER")
        if reduced not in out:
            out.append(reduced)
    return out


def main(path):
    with open(path, encoding="utf-8") as fh:
        brill = json.load(fh)

    rows = {}
    for word, tags in brill.items():
        if not word or any(c.isspace() for c in word):
            continue
        lower = word.lower()
        if lower in CLOSED_CLASS:
            continue
        if word != lower and lower in brill:
            continue
        reduced = reduce_tags(tags)
        if reduced:
            rows[word] = reduced
    for word, tag in CLOSED_CLASS.items():
        rows[word] = [tag]

    out = sys.stdout
    out.write("# word\tTAG\tcount (rank weight, see tools/build_pos_lexicon.py)\n")
    for word in sorted(rows):
        tags = rows[word]
        for rank, tag in enumerate(tags):
            out.write(f"{word}\t{tag}\t{len(tags) - rank}\n")


if __name__ == "__main__":
    main(sys.argv[1])
