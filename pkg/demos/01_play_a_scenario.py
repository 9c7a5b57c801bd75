#!/usr/bin/env python3
# Walk through the bundled teaching scenario by hand: first the tempting
# opening that jams the station, then the line that clears it.
from busout import classify, dispatch_events, legal_moves
from busout.levels import CLASSIC_MISSTEP, CLASSIC_WIN, classic_trap


def show(cfg, title):
    print(f"--- {title} ---")
    print("status:", classify(cfg).value)
    print("front of queue:", cfg.color_name(cfg.queue.front_color())
          if cfg.queue.front_color() is not None else "(everyone boarded)")
    print("spots:", [
        f"{cfg.color_name(e.color)}:{e.remaining}" if e else "empty"
        for e in cfg.spots.entries
    ])
    print("can dispatch:", legal_moves(cfg))
    print()


cfg = classic_trap()
show(cfg, "initial")

print("Dispatching the big red bus first looks tempting...")
state = cfg
for bus in CLASSIC_MISSTEP:
    state, events = dispatch_events(state, bus)
    boarded = sum(1 for e in events if e.kind == "board")
    print(f"  dispatch {bus}: {boarded} passengers board")
show(state, "after the misstep line")
print("No moves left and passengers still waiting: that is a deadlock.\n")

print("The winning order parks the big buses before touching red:")
state = cfg
for bus in CLASSIC_WIN:
    state, events = dispatch_events(state, bus)
    departures = [e for e in events if e.kind == "depart"]
    note = f", {len(departures)} bus(es) filled and left" if departures else ""
    print(f"  dispatch {bus}{note}")
show(state, "after the winning line")
