// The bundled six-bus teaching scenario, as plain instance-file data.
// Dispatching R-6 first traps the purple bus; park Y/B/G first to win.
export const SAMPLE_INSTANCE = JSON.stringify(
  {
    palette: ["red", "purple", "yellow", "blue", "green"],
    spots: 4,
    buses: [
      { id: "Y-10", color: "yellow", capacity: 10 },
      { id: "B-6", color: "blue", capacity: 6 },
      { id: "G-4", color: "green", capacity: 4 },
      { id: "R-4", color: "red", capacity: 4 },
      { id: "P-4", color: "purple", capacity: 4 },
      { id: "R-6", color: "red", capacity: 6 },
    ],
    blocks: [
      ["B-6", "Y-10"],
      ["G-4", "B-6"],
      ["R-4", "G-4"],
      ["P-4", "R-4"],
      ["P-4", "G-4"],
    ],
    queue: [
      ["red", 4],
      ["purple", 2],
      ["yellow", 2],
      ["purple", 2],
      ["blue", 3],
      ["yellow", 5],
      ["green", 2],
      ["yellow", 1],
      ["blue", 3],
      ["yellow", 2],
      ["green", 2],
      ["red", 6],
    ],
  },
  null,
  2,
);
