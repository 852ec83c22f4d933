"""
High-level and low-level views
==============================

A low-level (LLA) model spells out what happens inside every node. The
high-level (HLA) view keeps only nodes, ports and connections.
"""

from dataclasses import replace

from daml_kit import conforms, corpus, derive_hla, format_model, summarize

lla = corpus.load("aqss_lla")
print(lla.name, lla.level.value, len(lla.nodes), "nodes")

# dropping the behaviors gives the HLA view
hla = derive_hla(lla)
print(format_model(hla))

# a hand-written HLA model can be checked against its detailed counterpart
ok, mismatches = conforms(corpus.load("aqss_hla"), lla)
print("hand-written HLA conforms:", ok)

# rename one node and the mismatch names it
renamed = replace(hla, nodes=(replace(hla.nodes[0], name="Generator"),) + hla.nodes[1:])
print(conforms(renamed, lla))

# the summary only sees what behaviors describe, so the HLA view is empty of it
print(summarize(lla).to_text())
print(summarize(hla).element_count, "elements in the HLA view")
