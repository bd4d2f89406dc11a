"""A scripted session against the HTTP service, in-process.

Load the meeting-room environment, open a session, stream observations,
then sample the belief timeline -- the exact flow a dashboard drives.
"""

from importlib import resources

from fastapi.testclient import TestClient

from xaiplan.service import ServiceState, create_app

data = resources.files("xaiplan") / "data"
state = ServiceState(config_dir=str(data))
client = TestClient(create_app(state))

r = client.post("/environments", json={"xml": (data / "meeting-room.xml").read_text()})
print("loaded:", r.json())

r = client.post("/sessions", json={"environment": "meeting-room"})
session = r.json()["session"]
t = r.json()["snapshot"]["timestamp"]
print(f"session {session} opened; initial belief is the prior")

for label in ["(gather-input chair)", "(propose-option chair opt-a)",
              "(elicit-preference chair opt-a)"]:
    t += 1000
    snap = client.post(f"/sessions/{session}/observations",
                       json={"t": t, "action": label}).json()
    top = max(snap["entries"], key=lambda e: e["probability"])
    print(f"observed {label:32s} -> top hypothesis {top['id']} "
          f"({top['probability']:.3f})")

timeline = client.get(f"/sessions/{session}/timeline",
                      params={"interval": 1.0}).json()
print(f"\ntimeline at 1 s interval: {len(timeline['snapshots'])} ticks")
for entry in timeline["snapshots"]:
    snap = entry["snapshot"]
    top = max(snap["entries"], key=lambda e: e["probability"])
    print(f"  t+{(entry['tick'] - timeline['snapshots'][0]['tick'])//1000}s: "
          f"{snap['observation_count']} observations, leader {top['id']}")

# stateless endpoints ride the same service
triline = {
    "domain": (data / "triline.pddl").read_text(),
    "problem": (data / "triline-to-r.pddl").read_text(),
}
doc = client.post("/topk", params={"k": 3}, json=triline).json()
print(f"\nPOST /topk?k=3 -> costs {[g['plan']['cost'] for g in doc['plans']]}")
doc = client.post("/explain", json=triline).json()
print(f"POST /explain  -> {len(doc['relevance']['relevant'])} relevant / "
      f"{len(doc['relevance']['grayed'])} grayed of {doc['relevance']['total']}")
