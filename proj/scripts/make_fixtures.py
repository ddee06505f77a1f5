#!/usr/bin/env python3
"""Regenerates the bundled fixture corpora under data/fixtures/.

The corpora are deterministic constructions: every entity-bearing sentence
is built from a template with exactly one lexicon keyword, so the expected
mention counts, duplicate counts, and sentence boundaries are known by
construction and recorded in sidecar files.

Sentences steer the lexical stub backend through its cue words: one
unbalanced cue puts a sentence in the high or low band (|A| > 1), balanced
or absent cues keep it in the mid band (|A| < 0.2).
"""

import json
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "data", "fixtures")

CATEGORIES = ["cs.CL", "cs.LG", "cs.CV", "cs.NI", "stat.ML"]
YEARS = list(range(2016, 2024))


def doc(doc_id, sentences, source="papers", i=0):
    return {
        "doc_id": doc_id,
        "text": " ".join(sentences),
        "sentences": sentences,
        "date": "%d-0%d-1%d" % (YEARS[i % len(YEARS)], i % 9 + 1, i % 9),
        "categories": [CATEGORIES[i % len(CATEGORIES)]],
        "source": source,
    }


# ---------------------------------------------------------------- table 1

TABLE1 = [
    "When a job arrives, the system must decide whether to admit it or "
    "reject it, and if admitted, in which server to schedule the job.",
    "Meanwhile, anti-forensic attacks have been developed to fool these "
    "CNN-based forensic algorithms.",
    "The models demonstrated qualifications in various computer-related "
    "fields, such as cloud and virtualization, business analytics, "
    "cybersecurity, network setup...",
    "More and more users and developers are using Issue Tracking Systems to "
    "report issues, including bugs, feature requests, enhancement "
    "suggestions, etc.",
    "Our approach delivers forecast improvements over a competitive "
    "benchmark and we discover evidence for strong spatial interactions.",
    "To this end, for training the model, we convert the knowledge graph "
    "triples into reasonable and unreasonable texts.",
]

TABLE1_ENTITIES = [
    "the system",
    "these CNN-based forensic algorithms",
    "The models",
    "Issue Tracking Systems",
    "Our approach",
    "the model",
]


def table1_docs():
    return [doc("t1-%03d" % (i + 1), [s], i=i) for i, s in enumerate(TABLE1)]


# ------------------------------------------------------- synthetic corpus
#
# Unique filler nouns keep masked sentences distinct across documents.

LEARN_TASKS = [
    "rank search results", "translate legal contracts", "caption aerial imagery",
    "segment cardiac scans", "summarize meeting transcripts", "detect sarcasm",
    "compress video streams", "label astronomy surveys", "parse recipes",
    "transcribe archival audio", "route delivery trucks", "grade essays",
]
UNDERSTAND_THINGS = [
    "ambiguous queries", "regional dialects", "handwritten annotations",
    "nested negations", "colloquial idioms", "incomplete sketches",
]
DECIDE_CLAUSES = [
    "which packets to drop first", "when to recharge each battery",
    "which claims merit review", "how much memory to reserve",
]
GUIDE_PHASES = [
    "certification audits", "checksum validation", "watermark screening",
    "replay verification",
]
PROPOSE_TOPICS = [
    "sparse retrieval", "protein folding", "traffic forecasting",
    "ledger auditing", "pollen tracking", "glacier monitoring",
    "ore sorting", "tide prediction", "yarn inspection",
    "crater counting", "vine pruning", "kelp mapping",
]
USE_TASKS = [
    "triage", "inventory checks", "fraud screening",
    "irrigation planning", "seismic alerts", "menu planning",
]
DEVELOP_TOPICS = [
    "graph matching", "queue balancing", "spectrum allocation",
    "tumor staging",
]
MID_LEARN_SKILLS = [
    "robust features", "stable gradients", "sparse codes",
    "tonal contours", "long dependencies", "rare morphemes",
    "edge weights", "phase transitions", "syntax islands", "hue palettes",
]
MID_PROPOSE_NAMES = [
    "weather archives", "court transcripts", "herbarium sheets",
    "sonar sweeps", "census ledgers", "tram schedules",
    "chess endgames", "folk ballads", "coral atlases", "mine surveys",
]
NEUTRAL_THINGS = [
    "careful calibration", "periodic checkpoints", "quorum reads",
    "stable clocks", "warm replicas", "bounded queues",
    "signed manifests", "dense indexes", "rolling restarts",
    "paged snapshots", "scoped leases", "gossip rounds",
    "batched commits", "sharded logs", "pinned versions",
]
NEUTRAL_COUNTS = [
    "four stages", "seven layers", "three tiers", "nine shards",
    "five phases", "six rings", "eight lanes", "two planes",
    "ten cells", "twelve slots", "fifteen hops", "twenty bins",
    "thirty knots", "sixty ticks", "ninety frames",
]
NEWS_FIELDS = [
    "radiology", "aviation", "forestry", "banking", "shipping",
    "farming", "tailoring", "meteorology", "archaeology", "choreography",
    "cartography", "viticulture", "masonry", "falconry", "origami",
    "calligraphy", "topiary", "puppetry", "weaving", "glassblowing",
]
DUP_WORDS = ["forty", "fifty", "sixty", "seventy", "eighty"]
FILLER_AREAS = [
    "low-resource morphology", "undersea acoustics", "ice-core chemistry",
    "sign-language corpora", "medieval paleography", "orbital debris",
    "peat hydrology", "ant colony ecology", "harbor logistics",
    "volcanic ash transport", "grape phenology", "night-sky brightness",
]


def abstracts_200():
    docs = []
    expected = {"mentions": [], "duplicates_removed": 5}
    i = 0

    def add(doc_id, sentences, source, entity, mention_sentence):
        nonlocal i
        d = doc(doc_id, sentences, source=source, i=i)
        docs.append(d)
        if entity is not None:
            expected["mentions"].append(
                {"doc_id": doc_id, "entity": entity, "sentence": mention_sentence})
        i += 1

    for n, task in enumerate(LEARN_TASKS):
        s = "The model learns to %s." % task
        add("hi-lrn-%02d" % n, ["Annotation budgets stay tight.", s], "papers",
            "The model", s)
    for n, thing in enumerate(UNDERSTAND_THINGS):
        s = "The system understands %s." % thing
        add("hi-und-%02d" % n, [s], "papers", "The system", s)
    for n, clause in enumerate(DECIDE_CLAUSES):
        s = "The network decides %s." % clause
        add("hi-dec-%02d" % n, [s], "papers", "The network", s)
    for n, phase in enumerate(GUIDE_PHASES):
        s = "The model guides reviewers during %s." % phase
        add("hi-gde-%02d" % n, [s], "papers", "The model", s)

    for n, topic in enumerate(PROPOSE_TOPICS):
        s = "We propose a framework for %s." % topic
        add("lo-prop-%02d" % n, [s, "Results appear in the appendix."],
            "papers", "a framework", s)
    for n, task in enumerate(USE_TASKS):
        s = "Practitioners use the system for %s." % task
        add("lo-use-%02d" % n, [s], "papers", "the system", s)
    for n, topic in enumerate(DEVELOP_TOPICS):
        s = "We develop an algorithm for %s." % topic
        add("lo-dev-%02d" % n, [s], "papers", "an algorithm", s)

    for n, skill in enumerate(MID_LEARN_SKILLS):
        s = "We propose a curriculum from which the model learns %s." % skill
        add("mid-lrn-%02d" % n, [s], "papers", "the model", s)
    for n, name in enumerate(MID_PROPOSE_NAMES):
        s = "After learning from %s, we propose the framework as a baseline." % name
        add("mid-prop-%02d" % n, [s], "papers", "the framework", s)
    for n, thing in enumerate(NEUTRAL_THINGS):
        s = "The system requires %s." % thing
        add("mid-neu-%02d" % n, [s], "papers", "The system", s)
    for n, count in enumerate(NEUTRAL_COUNTS):
        s = "The architecture contains %s." % count
        add("mid-neu-%02d" % (n + 15), [s], "papers", "The architecture", s)

    for n, field in enumerate(NEWS_FIELDS):
        s = "The system learns %s tricks faster than veteran trainers." % field
        add("news-%02d" % n, [s], "news", "The system", s)

    for n, word in enumerate(DUP_WORDS):
        s = "The network converges after %s iterations." % word
        add("dup-a-%02d" % n, [s], "papers", "The network", s)
        # Deliberate duplicate of the sentence above under another doc id;
        # dedup keeps the first copy only.
        d = doc("dup-b-%02d" % n, [s], source="papers", i=i)
        docs.append(d)
        i += 1

    fillers = []
    for area in FILLER_AREAS:
        fillers.append(["Datasets in %s remain scarce." % area,
                        "Annotation drift, e.g. label skew, persists."])
        fillers.append(["Benchmarks for %s date to 1998." % area,
                        "Coverage since v2.5 of the archive is partial."])
        fillers.append(["Dr. Vance et al. surveyed %s twice." % area,
                        "Their Fig. 3 tabulates the gaps.",
                        "No single release fills them."])
    # 36 fillers so far; pad to 66 with numbered notes.
    for n in range(30):
        fillers.append(["Release note %d covers packaging only." % (n + 1),
                        "It lists checksums, i.e. digests, per file."])
    for n, sentences in enumerate(fillers):
        add("fill-%02d" % n, sentences, "papers", None, None)

    docs.extend(table1_docs())
    for d, entity in zip(docs[-6:], TABLE1_ENTITIES):
        expected["mentions"].append(
            {"doc_id": d["doc_id"], "entity": entity, "sentence": d["sentences"][0]})

    assert len(docs) == 200, len(docs)
    return docs, expected


# ------------------------------------------------------- ablation corpus

ABLATION = []


def _ab(doc_id, sentence, source, entity):
    ABLATION.append((doc_id, sentence, source, entity))


for n, w in enumerate(["blunt prompts", "odd riddles", "vague forms"]):
    _ab("ab-nl-%02d" % n, "The language model learns %s quickly." % w, "news",
        "The language model")
for n, w in enumerate(["stale memes", "niche slang", "loose puns",
                       "terse notes", "odd footnotes"]):
    _ab("ab-nl-%02d" % (n + 3), "ChatGPT refuses to repeat %s." % w, "news",
        "ChatGPT")
for n, field in enumerate(["checkers", "darts", "bridge", "mahjong",
                           "backgammon", "cribbage", "dominoes"]):
    _ab("ab-na-%02d" % n, "The algorithm beats professionals at %s." % field,
        "news", "The algorithm")
for n, w in enumerate(["tax codes", "sea charts", "rune tables",
                       "star logs", "herb lists", "toll rolls"]):
    _ab("ab-pl-%02d" % n, "The language model understands %s." % w, "papers",
        "The language model")
for n, w in enumerate(["rare glyphs", "faint echoes", "dense scripts",
                       "worn seals"]):
    _ab("ab-pm-%02d" % n,
        "We propose a corpus from which the language model learns %s." % w,
        "papers", "the language model")
for n, w in enumerate(["peat mapping", "keel design", "silt removal",
                       "kite stability", "wick testing"]):
    _ab("ab-lo-%02d" % n, "We propose a framework for %s." % w, "papers",
        "a framework")
for n, w in enumerate(["dock billing", "seed audits", "mast repairs",
                       "loom tuning", "sail patching"]):
    _ab("ab-lu-%02d" % n, "Engineers use the system for %s." % w, "papers",
        "the system")
for n, w in enumerate(["knot counting", "tide charting", "salt grading",
                       "rope testing", "hull scoring"]):
    _ab("ab-ld-%02d" % n, "We develop an algorithm for %s." % w, "papers",
        "an algorithm")
for n, w in enumerate(["steady power", "cool racks", "spare fans"]):
    _ab("ab-mn-%02d" % n, "The system requires %s." % w, "papers",
        "The system")
for n, w in enumerate(["steady drift", "flat load curves"]):
    _ab("ab-mn-%02d" % (n + 3), "The system shows %s." % w, "papers",
        "The system")
for n, w in enumerate(["two stacks", "five ducts", "nine coils",
                       "six vents", "ten struts"]):
    _ab("ab-mc-%02d" % n, "The architecture contains %s." % w, "papers",
        "The architecture")


def ablation_50():
    docs, expected = [], []
    for i, (doc_id, sentence, source, entity) in enumerate(ABLATION):
        docs.append(doc(doc_id, [sentence], source=source, i=i))
        expected.append({"doc_id": doc_id, "entity": entity, "sentence": sentence})
    assert len(docs) == 50, len(docs)
    return docs, expected


# ------------------------------------------------------- CoNLL-U fixture
# (id, form, lemma, upos, head, deprel) rows per sentence, with gold
# triples derived from the same structures.

CONLLU = [
    ("cu-01", "The model learns sparse codes.",
     [(1, "The", "the", "DET", 2, "det"),
      (2, "model", "model", "NOUN", 3, "nsubj"),
      (3, "learns", "learn", "VERB", 0, "root"),
      (4, "sparse", "sparse", "ADJ", 5, "amod"),
      (5, "codes", "code", "NOUN", 3, "obj"),
      (6, ".", ".", "PUNCT", 3, "punct")],
     [("The model", "learn", "sparse codes")]),
    ("cu-02", "We propose a lightweight framework.",
     [(1, "We", "we", "PRON", 2, "nsubj"),
      (2, "propose", "propose", "VERB", 0, "root"),
      (3, "a", "a", "DET", 5, "det"),
      (4, "lightweight", "lightweight", "ADJ", 5, "amod"),
      (5, "framework", "framework", "NOUN", 2, "obj"),
      (6, ".", ".", "PUNCT", 2, "punct")],
     [("We", "propose", "a lightweight framework")]),
    ("cu-03", "The system was evaluated by experts.",
     [(1, "The", "the", "DET", 2, "det"),
      (2, "system", "system", "NOUN", 4, "nsubj:pass"),
      (3, "was", "be", "AUX", 4, "aux:pass"),
      (4, "evaluated", "evaluate", "VERB", 0, "root"),
      (5, "by", "by", "ADP", 6, "case"),
      (6, "experts", "expert", "NOUN", 4, "obl"),
      (7, ".", ".", "PUNCT", 4, "punct")],
     [("The system", "evaluate", None)]),
    ("cu-04", "Reviewers praised the new architecture.",
     [(1, "Reviewers", "reviewer", "NOUN", 2, "nsubj"),
      (2, "praised", "praise", "VERB", 0, "root"),
      (3, "the", "the", "DET", 5, "det"),
      (4, "new", "new", "ADJ", 5, "amod"),
      (5, "architecture", "architecture", "NOUN", 2, "obj"),
      (6, ".", ".", "PUNCT", 2, "punct")],
     [("Reviewers", "praise", "the new architecture")]),
    ("cu-05", "The network drops noisy packets.",
     [(1, "The", "the", "DET", 2, "det"),
      (2, "network", "network", "NOUN", 3, "nsubj"),
      (3, "drops", "drop", "VERB", 0, "root"),
      (4, "noisy", "noisy", "ADJ", 5, "amod"),
      (5, "packets", "packet", "NOUN", 3, "obj"),
      (6, ".", ".", "PUNCT", 3, "punct")],
     [("The network", "drop", "noisy packets")]),
    ("cu-06", "Our approach outperforms strong baselines.",
     [(1, "Our", "our", "PRON", 2, "nmod:poss"),
      (2, "approach", "approach", "NOUN", 3, "nsubj"),
      (3, "outperforms", "outperform", "VERB", 0, "root"),
      (4, "strong", "strong", "ADJ", 5, "amod"),
      (5, "baselines", "baseline", "NOUN", 3, "obj"),
      (6, ".", ".", "PUNCT", 3, "punct")],
     [("Our approach", "outperform", "strong baselines")]),
    ("cu-07", "That the model converges surprised us.",
     [(1, "That", "that", "SCONJ", 4, "mark"),
      (2, "the", "the", "DET", 3, "det"),  # head adjusted below
      (3, "model", "model", "NOUN", 4, "nsubj"),
      (4, "converges", "converge", "VERB", 5, "csubj"),
      (5, "surprised", "surprise", "VERB", 0, "root"),
      (6, "us", "we", "PRON", 5, "obj"),
      (7, ".", ".", "PUNCT", 5, "punct")],
     [("the model", "converge", None),
      ("That the model converges", "surprise", "us")]),
    ("cu-08", "The software stores signed manifests.",
     [(1, "The", "the", "DET", 2, "det"),
      (2, "software", "software", "NOUN", 3, "nsubj"),
      (3, "stores", "store", "VERB", 0, "root"),
      (4, "signed", "signed", "ADJ", 5, "amod"),
      (5, "manifests", "manifest", "NOUN", 3, "obj"),
      (6, ".", ".", "PUNCT", 3, "punct")],
     [("The software", "store", "signed manifests")]),
    ("cu-09", "Annotators gave the system high marks.",
     [(1, "Annotators", "annotator", "NOUN", 2, "nsubj"),
      (2, "gave", "give", "VERB", 0, "root"),
      (3, "the", "the", "DET", 4, "det"),
      (4, "system", "system", "NOUN", 2, "iobj"),
      (5, "high", "high", "ADJ", 6, "amod"),
      (6, "marks", "mark", "NOUN", 2, "obj"),
      (7, ".", ".", "PUNCT", 2, "punct")],
     [("Annotators", "give", "the system")]),
    ("cu-10", "The algorithm halts.",
     [(1, "The", "the", "DET", 2, "det"),
      (2, "algorithm", "algorithm", "NOUN", 3, "nsubj"),
      (3, "halts", "halt", "VERB", 0, "root"),
      (4, ".", ".", "PUNCT", 3, "punct")],
     [("The algorithm", "halt", None)]),
]


def write_conllu():
    lines = []
    gold = []
    manifest = []
    corpus = []
    for ordinal, (doc_id, text, rows, triples) in enumerate(CONLLU):
        lines.append("# sent_id = %s" % doc_id)
        lines.append("# text = %s" % text)
        for (tid, form, lemma, upos, head, deprel) in rows:
            lines.append("\t".join([str(tid), form, lemma, upos, "_", "_",
                                    str(head), deprel, "_", "_"]))
        lines.append("")
        manifest.append({"ordinal": ordinal, "doc_id": doc_id, "sentence_index": 0})
        corpus.append(doc(doc_id, [text], i=ordinal))
        gold.append({
            "doc_id": doc_id,
            "triples": [{"subject": s, "verb": v, "object": o}
                        for (s, v, o) in triples],
        })
    with open(os.path.join(OUT, "parses.conllu"), "w") as f:
        f.write("\n".join(lines) + "\n")
    with open(os.path.join(OUT, "parses_manifest.jsonl"), "w") as f:
        for row in manifest:
            f.write(json.dumps(row) + "\n")
    with open(os.path.join(OUT, "conllu_corpus.jsonl"), "w") as f:
        for d in corpus:
            f.write(json.dumps(strip(d)) + "\n")
    with open(os.path.join(OUT, "conllu_gold.json"), "w") as f:
        json.dump(gold, f, indent=2)
        f.write("\n")


def strip(d):
    d = dict(d)
    d.pop("sentences")
    return d


def main():
    os.makedirs(OUT, exist_ok=True)

    with open(os.path.join(OUT, "table1_arxiv.jsonl"), "w") as f:
        for d in table1_docs():
            f.write(json.dumps(strip(d)) + "\n")

    docs, expected = abstracts_200()
    with open(os.path.join(OUT, "abstracts_200.jsonl"), "w") as f:
        for d in docs:
            f.write(json.dumps(strip(d)) + "\n")
    with open(os.path.join(OUT, "abstracts_200_sentences.jsonl"), "w") as f:
        for d in docs:
            f.write(json.dumps({"doc_id": d["doc_id"],
                                "sentences": d["sentences"]}) + "\n")
    with open(os.path.join(OUT, "abstracts_200_expected.json"), "w") as f:
        json.dump(expected, f, indent=2)
        f.write("\n")

    docs, expected = ablation_50()
    with open(os.path.join(OUT, "ablation_50.jsonl"), "w") as f:
        for d in docs:
            f.write(json.dumps(strip(d)) + "\n")
    with open(os.path.join(OUT, "ablation_50_expected.json"), "w") as f:
        json.dump(expected, f, indent=2)
        f.write("\n")

    write_conllu()
    print("fixtures written to", os.path.normpath(OUT))


if __name__ == "__main__":
    main()
