"""
Modeling a small data architecture
==================================

Write a model in the text language, parse it, check it and look at it
in the canonical layout.
"""

from daml_kit import format_model, parse, validate

SOURCE = """
architecture "Sensor feed" {
  level LLA
  node Sensors kind source {
    out port readings
    behavior {
      generate g { format json }
      send s via readings
      link g -> s
    }
  }
  node Lake kind storage {
    in port incoming
    behavior {
      on receive r from incoming
      store raw { tech object-store "MinIO" format json location on-premise }
      link r -> raw
    }
  }
  connect Sensors.readings -> Lake.incoming label "raw readings"
}
"""

# parse() never raises on bad input: it hands back diagnostics instead
result = parse(SOURCE, "sensor.daml")
print("parsed:", result.ok)
model = result.model

# the model is a tree of frozen dataclasses
for node in model.nodes:
    kinds = [e.kind for e in node.behavior.elements]
    print(f"{node.name:8} {node.kind.value:8} ports={[p.name for p in node.ports]} elements={kinds}")

# validation returns a sorted report; this model is clean
report = validate(model)
print(f"{report.error_count} error(s), {report.warning_count} warning(s)")

# the formatter is the single canonical layout, so formatting twice is a no-op
text = format_model(model)
print(text)
assert format_model(parse(text).model) == text
