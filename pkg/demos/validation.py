"""
Reading diagnostics
===================

Break a model in a few ways and see what the checker reports.
"""

from daml_kit import parse, rule_catalog, validate

# every finding carries a stable code; the catalog lists them all
for rule in rule_catalog():
    print(f"{rule.code} {rule.severity.value:7} {rule.description}")
print()

# a syntax error stops at the parser, with a line and column
bad_syntax = 'architecture "A" {\n  level HLA\n  node A kind warehouse {}\n}\n'
for d in parse(bad_syntax, "typo.daml").diagnostics:
    print(d.render())
print()

# this one parses, but the behavior loops back on itself and a port is
# wired the wrong way round
broken = """
architecture "Broken" {
  level LLA
  node Ingest {
    in port raw
    out port clean
    behavior {
      on receive r from raw
      process p { type batch ops [clean] }
      process q { type batch }
      send s via clean
      link r -> p
      link p -> q
      link q -> p
      link q -> s
    }
  }
  node Sink {
    out port feed
    behavior {
      generate g { format csv }
      send s via feed
      link g -> s
    }
  }
  connect Ingest.clean -> Sink.feed
}
"""
model = parse(broken, "broken.daml").model
report = validate(model)
for d in report.diagnostics:
    print(d.render())
print(f"ok={report.ok}")
