"""Parse a domain, ground it, plan optimally, validate, and inspect the
causal structure of the plan.

The triline domain is three facts in a line: `a` turns p into p,q; `b`
turns q into q,r; `c` jumps straight from p to r at triple cost.
"""

from importlib import resources

import xaiplan as xp

data = resources.files("xaiplan") / "data"

domain = xp.parse_domain((data / "triline.pddl").read_text())
problem = xp.parse_problem((data / "triline-to-r.pddl").read_text(), domain)
task = xp.ground(domain, problem)

print(f"grounded task: {len(task.facts)} facts, {len(task.actions)} actions")
print("facts:", ", ".join(task.facts))

result = xp.solve_optimal(task)
plan = result.plan
print(f"\noptimal plan (cost {plan.cost}, {result.expanded} expansions):")
for i, step in enumerate(plan.steps):
    print(f"  {i}. {step}")

report = xp.validate_plan(task, plan)
print("\nstate trace:")
for i, state in enumerate(report.state_trace):
    print(f"  after {i} steps: {{{', '.join(sorted(state))}}}")

links = xp.extract_causal_links(task, plan)
print("\ncausal links (producer -> consumer on fact):")
for link in sorted(links.links, key=lambda l: str(l.fact)):
    print(f"  {link.producer} -> {link.consumer} on {link.fact}")

# the same machinery on the bundled Collective Decision meeting domain
cd = xp.ground(
    xp.parse_domain((data / "collective-decision.pddl").read_text()),
    xp.parse_problem((data / "cd-decide.pddl").read_text(),
                     xp.parse_domain((data / "collective-decision.pddl").read_text())))
cd_plan = xp.solve_optimal(cd).plan
print(f"\ncollective-decision: reaching '(decided opt-a)' costs {cd_plan.cost}:")
for step in cd_plan.steps:
    print(f"  {step}")
