"""tf-idf indexed retrieval over example-response utterances.

Weighting: tf is the raw term count, idf(t) = ln(N / df(t)) + 1, and
document vectors are L2-normalized, so similarity is a plain dot product.
Terms appearing in every document keep idf = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class TfIdfIndex:
    vocabulary: dict[str, int]
    idf: dict[str, float]
    doc_vectors: tuple[dict[str, float], ...]  # unit L2 norm, term -> weight
    doc_ids: tuple[str, ...]


def build_index(docs: Sequence[tuple[str, Sequence[str]]]) -> TfIdfIndex:
    """Index (id, tokens) documents. Tokens come pre-tokenized, matching
    the understanding pipeline's tokenizer output."""
    if not docs:
        raise ValueError("cannot build a tf-idf index over zero documents")
    n = len(docs)
    df: dict[str, int] = {}
    counts: list[dict[str, int]] = []
    for _, tokens in docs:
        tf: dict[str, int] = {}
        for token in tokens:
            tf[token] = tf.get(token, 0) + 1
        counts.append(tf)
        for term in tf:
            df[term] = df.get(term, 0) + 1
    vocabulary = {term: i for i, term in enumerate(df)}
    idf = {term: math.log(n / df[term]) + 1.0 for term in df}
    vectors = []
    for tf in counts:
        vec = {term: count * idf[term] for term, count in tf.items()}
        norm = math.sqrt(sum(w * w for w in vec.values()))
        if norm > 0:
            vec = {term: w / norm for term, w in vec.items()}
        vectors.append(vec)
    return TfIdfIndex(
        vocabulary=vocabulary,
        idf=idf,
        doc_vectors=tuple(vectors),
        doc_ids=tuple(doc_id for doc_id, _ in docs),
    )


def most_similar(
    index: TfIdfIndex, query_tokens: Sequence[str], threshold: float
) -> Optional[tuple[str, float]]:
    """Best document by cosine similarity, or None below the threshold.

    Out-of-vocabulary query terms contribute nothing; exact similarity
    ties go to the lexicographically smallest document id.
    """
    tf: dict[str, int] = {}
    for token in query_tokens:
        if token in index.idf:
            tf[token] = tf.get(token, 0) + 1
    if not tf:
        return None
    qvec = {term: count * index.idf[term] for term, count in tf.items()}
    qnorm = math.sqrt(sum(w * w for w in qvec.values()))
    best: Optional[tuple[str, float]] = None
    for doc_id, dvec in zip(index.doc_ids, index.doc_vectors):
        score = sum(w * dvec.get(term, 0.0) for term, w in qvec.items()) / qnorm
        if best is None or score > best[1] or (score == best[1] and doc_id < best[0]):
            best = (doc_id, score)
    if best is None or best[1] < threshold:
        return None
    return best
