#!/usr/bin/env python3
# Drive the exploration service the way the browser client does: create a
# session, peek at solver annotations, make a bad move, undo it.
import json
import threading
import urllib.request

from busout.fileformat import render_instance
from busout.levels import classic_trap
from busout.service import make_server


def call(method, url, payload=None):
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(url, data=data, method=method)
    if data:
        req.add_header("Content-Type", "application/json")
    try:
        with urllib.request.urlopen(req) as response:
            return response.status, json.loads(response.read())
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read())


server = make_server(port=0)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}/v1"
print("service at", base)

req = urllib.request.Request(
    f"{base}/sessions", data=render_instance(classic_trap()).encode(), method="POST"
)
with urllib.request.urlopen(req) as response:
    doc = json.loads(response.read())
sid = doc["sessionId"]
print("session", sid, "legal moves:", doc["state"]["legalMoves"])

status, moves = call("GET", f"{base}/sessions/{sid}/moves?annotate=1")
for entry in moves["moves"]:
    print(f"  {entry['bus']}: {entry['annotation']}")

print("\ntaking the losing move anyway...")
status, doc = call("POST", f"{base}/sessions/{sid}/dispatch", {"bus": "R-6"})
print("boarded", len([e for e in doc["events"] if e["kind"] == "board"]),
      "passengers; spot 0 now", doc["state"]["spots"][0])

status, doc = call("POST", f"{base}/sessions/{sid}/dispatch", {"bus": "P-4"})
print("trying the blocked purple bus ->", status, doc["reason"])

status, doc = call("POST", f"{base}/sessions/{sid}/undo")
print("undo ->", doc["state"]["classification"],
      "| queue cursor", doc["state"]["queue"]["cursor"])

status, doc = call("POST", f"{base}/sessions/{sid}/solve")
print("solver recommends:", " -> ".join(doc["plan"]))
server.shutdown()
