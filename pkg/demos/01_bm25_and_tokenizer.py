# coding: utf-8

# # Tokenizing and BM25 scoring
#
# Candidate papers are indexed on title + abstract. Text goes through one
# normaliser: ASCII folding, lowercasing, a fixed stopword list, and the
# Porter stemmer. Queries use the very same function.

# In[1]:

import numpy as np

from tfcr import CandidateDocument, build_index, tokenize
from tfcr.bm25 import Bm25Params, bm25_score, idf, rank_all

print(tokenize("The 2019 Models"))
print(tokenize("Citation recommendation, citation context"))
print(tokenize("BM25 beats tf-idf in 2010"))


# Build a tiny index. `avgdl` is the mean number of indexed terms per candidate.

# In[2]:

cands = [
    CandidateDocument("c1", "Context-aware citation recommendation", "Citing sentences as queries.", 2010),
    CandidateDocument("c2", "Topic models for citation networks", "Latent topics over papers.", 2008),
    CandidateDocument("c3", "Okapi at TREC", "Probabilistic term weighting.", 1994),
    CandidateDocument("c4", "Graph walks for recommendation", "Random walks over citation graphs.", 2011),
]
index = build_index(cands)
print(index.n_docs, index.avgdl)
print({t: index.doc_freq[t] for t in sorted(index.doc_freq)[:8]})


# idf is the natural-log Robertson-Sparck Jones form and may go negative for
# terms in more than half of the collection ("citat" is in three of four).

# In[3]:

for term in ("citat", "topic", "recommend"):
    print(term, round(idf(term, index), 4), "clamped:", idf(term, index, clamp=True))


# Rank everything for a query. Ties fall back to ascending candidate id.

# In[4]:

query = tokenize("citation recommendation with topic models")
for e in rank_all(query, index):
    print(f"{e.cand_id}  {e.score:+.4f}")


# k1 controls saturation, b controls length normalisation.

# In[5]:

grid = np.array([[bm25_score(query, "c2", index, Bm25Params(k1, b)) for b in (0.0, 0.5, 1.0)] for k1 in (0.5, 1.2, 2.0)])
print(np.round(grid, 4))
