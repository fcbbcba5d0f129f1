# coding: utf-8

# # Term-function weighting
#
# Every candidate carries a profile: how often it is cited from paragraphs
# labelled problem, method, problem+method and method+problem. The weight
# for a query's function is that count over the profile total, and the
# final score is (1 + alpha * weight) * bm25.

# In[1]:

from tfcr import TermFunction, TermFunctionProfile, tf_weight, tfw_score

F = TermFunctionProfile("c1", (4, 2, 8, 1))
for tf in (TermFunction.PROBLEM, TermFunction.METHOD, TermFunction.PROBLEM_PLUS_METHOD, TermFunction.METHOD_PLUS_PROBLEM):
    print(f"{tf.value:<16} {tf_weight(F, tf):.4f}")

print(tfw_score(10.0, 4 / 15))             # 12.6667
print(tfw_score(10.0, 4 / 15, alpha=0.5))  # 11.3333


# Two candidates with identical text get identical BM25 scores. The
# profile separates them once the query says which function it needs.

# In[2]:

from tfcr import CandidateDocument, Query, build_index, recommend

texts = {"c1": "neural ranking", "c2": "neural ranking", "c3": "graph walk", "c4": "graph walk", "c5": "random walk"}
index = build_index([CandidateDocument(c, t, "", 2000) for c, t in texts.items()])
profiles = {c: TermFunctionProfile(c) for c in texts}
profiles["c1"] = TermFunctionProfile("c1", (1, 9, 0, 0))  # mostly cited for its method
profiles["c2"] = TermFunctionProfile("c2", (8, 2, 0, 0))  # mostly cited for its problem

for tf in ("problem", "method"):
    q = Query("neural ranking", tf)
    for variant in ("plain-bm25", "tfw-bm25"):
        top = recommend(q, index, profiles, variant=variant, top_n=2)
        print(f"{tf:<8} {variant:<11}", [(e.cand_id, round(e.score, 3), e.tf_weight) for e in top])


# The year filter keeps only candidates strictly older than the cutoff;
# candidates with no year are dropped unless `lenient_year=True`.

# In[3]:

index = build_index([
    CandidateDocument("old", "neural ranking", "", 2005),
    CandidateDocument("new", "neural ranking", "", 2012),
    CandidateDocument("undated", "neural ranking", "", None),
    CandidateDocument("x", "graph", "", 2000),
])
profiles = {c: TermFunctionProfile(c) for c in index.doc_ids}
q = Query("neural ranking", "problem", year_cutoff=2010)
print([e.cand_id for e in recommend(q, index, profiles)])
print([e.cand_id for e in recommend(q, index, profiles, lenient_year=True)])
