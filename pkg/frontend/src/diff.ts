// Token diff between the old axiom and a candidate replacement, for the
// side-by-side view. Longest common subsequence over whitespace tokens.

export interface DiffSegment {
  kind: 'same' | 'removed' | 'added';
  text: string;
}

export interface SideBySide {
  before: DiffSegment[];
  after: DiffSegment[];
}

function tokens(text: string): string[] {
  return text.split(/\s+/).filter((t) => t.length > 0);
}

export function diffAxioms(oldText: string, newText: string): SideBySide {
  const a = tokens(oldText);
  const b = tokens(newText);
  const lcs: number[][] = Array.from({ length: a.length + 1 }, () =>
    new Array<number>(b.length + 1).fill(0),
  );
  for (let i = a.length - 1; i >= 0; i--) {
    for (let j = b.length - 1; j >= 0; j--) {
      lcs[i][j] =
        a[i] === b[j]
          ? lcs[i + 1][j + 1] + 1
          : Math.max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  const before: DiffSegment[] = [];
  const after: DiffSegment[] = [];
  const push = (list: DiffSegment[], kind: DiffSegment['kind'], text: string) => {
    const last = list[list.length - 1];
    if (last && last.kind === kind) {
      last.text += ` ${text}`;
    } else {
      list.push({ kind, text });
    }
  };
  let i = 0;
  let j = 0;
  while (i < a.length && j < b.length) {
    if (a[i] === b[j]) {
      push(before, 'same', a[i]);
      push(after, 'same', b[j]);
      i++;
      j++;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      push(before, 'removed', a[i]);
      i++;
    } else {
      push(after, 'added', b[j]);
      j++;
    }
  }
  for (; i < a.length; i++) push(before, 'removed', a[i]);
  for (; j < b.length; j++) push(after, 'added', b[j]);
  return { before, after };
}
