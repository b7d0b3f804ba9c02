import { Instance, tokensOf } from './data.js';

export const PAD = '<pad>';
export const BOS = '<bos>';
export const EOS = '<eos>';
export const UNK = '<unk>';

// Task markers, tag tokens and the turn separator always get ids, even when
// the training stream is filtered down to a subset of tasks.
const RESERVED = ['[GRAPH]', '[NER]', '[PER]', '[LOC]', '[ORG]', '[MISC]', '[SEP]'];

export class Vocab {
  readonly tokens: string[];
  private readonly index: Map<string, number>;

  private constructor(tokens: string[]) {
    this.tokens = tokens;
    this.index = new Map(tokens.map((t, i) => [t, i]));
  }

  static build(instances: readonly Instance[]): Vocab {
    const seen = new Set<string>(RESERVED);
    for (const inst of instances) {
      for (const tok of tokensOf(inst.src)) seen.add(tok);
      for (const tok of tokensOf(inst.tgt)) seen.add(tok);
    }
    const sorted = [...seen].sort();
    return new Vocab([PAD, BOS, EOS, UNK, ...sorted]);
  }

  get size(): number {
    return this.tokens.length;
  }

  get padId(): number {
    return 0;
  }

  get bosId(): number {
    return 1;
  }

  get eosId(): number {
    return 2;
  }

  get unkId(): number {
    return 3;
  }

  id(token: string): number {
    return this.index.get(token) ?? this.unkId;
  }

  encode(tokens: readonly string[]): number[] {
    return tokens.map((t) => this.id(t));
  }

  decode(ids: readonly number[]): string[] {
    return ids.map((i) => this.tokens[i] ?? UNK);
  }
}
