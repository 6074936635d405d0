"""Hand-built reference sentences and a tiny notation for writing tuples.

``tup(sent, "his parents ; [fled] from ; hungary")`` builds a gold tuple whose
bracketed words are inferred and whose other words are aligned to the
sentence's tokens (leftmost occurrence at or after the previous word of the
same part, else the leftmost occurrence anywhere).
"""

from oiescore.ingest import build_prediction, tokenize
from oiescore.model import SLOTS, GoldSet, Part, Sentence, Token, TupleRecord


def sentence(sid, text, doc_id=None):
    return Sentence(doc_id or sid.split()[0], sid, text, tuple(tokenize(text)))


CH7 = sentence("CH 7", "His parents are Ashkenazi Jews who had to flee from Hungary during World War II.")
FI2 = sentence(
    "FI 2",
    "A police statement did not name the man in the boot, but in effect indicated the traveler "
    "was State Secretary Samuli Virtanen, who is also the deputy to Foreign Minister Timo Soini.",
)
CE4 = sentence(
    "CE 4",
    "The International Monetary Fund, for example, saw 2017 global growth at 3.4 percent with "
    "advanced economies advancing 1.8 percent.",
)
TOKYO = sentence("TK 1", "Tokyo is the capital of Japan.")


def _align(sent, words):
    toks = []
    last = -1
    for w in words:
        if w.startswith("[") and w.endswith("]"):
            toks.append(Token(w[1:-1], inferred=True))
            continue
        positions = [i for i, x in enumerate(sent.tokens) if x == w]
        if not positions:
            raise ValueError(f"{w!r} not in sentence {sent.sentence_id}")
        after = [i for i in positions if i > last]
        i = after[0] if after else positions[0]
        toks.append(Token(w, i))
        last = i
    return tuple(toks)


def tup(sent, spec, attributed=False, resolved=None):
    resolved = resolved or {}
    chunks = [c.split() for c in spec.split(";")]
    parts = []
    for slot, words in zip(SLOTS, chunks):
        words = [w.lower() for w in words]
        parts.append(Part(slot, _align(sent, words), resolved.get(slot)))
    return TupleRecord(sent.sentence_id, tuple(parts), attributed=attributed)


def pred(sid, spec, confidence=1.0):
    chunks = [c.strip() for c in spec.split(";")]
    return build_prediction(sid, chunks[0], chunks[1], chunks[2:], confidence)


def ch7_gold():
    his = {"arg1": "Chilly Gonzales's parents"}
    return GoldSet(
        (CH7,),
        (
            tup(CH7, "his parents ; are ; ashkenazi jews", resolved=his),
            tup(CH7, "his parents ; are ; jews", resolved=his),
            tup(CH7, "his parents ; had to flee from ; hungary ; during world war ii", resolved=his),
            tup(CH7, "his parents ; [fled] from ; hungary ; during world war ii", resolved=his),
            tup(CH7, "[chilly] [gonzales] ; [has] ; parents"),
        ),
    )


def fi2_gold():
    return GoldSet(
        (FI2,),
        (
            tup(FI2, "samuli virtanen ; [is] ; state secretary"),
            tup(FI2, "samuli virtanen ; is ; the deputy to foreign minister timo soini"),
            tup(FI2, "samuli virtanen ; is ; [a] deputy"),
            tup(FI2, "timo soini ; [is] ; foreign minister"),
            tup(FI2, "timo soini ; [has] ; [a] deputy"),
        ),
    )


def ce4_gold():
    return GoldSet(
        (CE4,),
        (
            tup(CE4, "the international monetary fund ; saw ; 2017 global growth ; at 3.4 percent"),
            tup(CE4, "the international monetary fund ; saw ; advanced economies ; advancing 1.8 percent ; [in] 2017"),
            tup(CE4, "2017 global growth ; [was] ; 3.4 percent"),
            tup(CE4, "advanced economies ; [advanced] ; 1.8 percent ; [in] 2017", attributed=True),
        ),
    )


def sample_gold():
    sets = [ch7_gold(), fi2_gold(), ce4_gold()]
    return GoldSet(
        tuple(s for g in sets for s in g.sentences),
        tuple(t for g in sets for t in g.tuples),
    )
