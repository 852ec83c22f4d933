"""
Exporting models
================

Turn a bundled model into Graphviz DOT and into canonical JSON.
"""

import json
import shutil
import subprocess

from daml_kit import corpus, from_json, structural_equal, to_dot, to_json

model = corpus.load("hydre")

# one cluster per node, one vertex per behavior element, bold edges for connections
dot = to_dot(model)
print(dot[:600], "...")

# collapse=True draws each node as a single box
print(to_dot(model, collapse=True).count("->"), "edges in the collapsed drawing")

# if Graphviz happens to be installed, render it
if shutil.which("dot"):
    subprocess.run(["dot", "-Tsvg", "-o", "hydre.svg"], input=dot, text=True, check=True)
    print("wrote hydre.svg")

# JSON is versioned and key-ordered; reading it back gives the same model
text = to_json(model)
print(json.loads(text)["daml"], len(text), "bytes")
back = from_json(text)
print("round trip equal:", structural_equal(back.model, model))

# the reader is strict: wrong versions and unknown keys are rejected
for d in from_json(text.replace('"1.0"', '"2.0"', 1)).diagnostics:
    print(d.render())
