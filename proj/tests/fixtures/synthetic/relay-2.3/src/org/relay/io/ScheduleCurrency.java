package org.relay.io;

/** Handles buffer account ledger. */
public class ScheduleCurrency {
  private int ledgerChannel;
  public void ledgerBuffer() { accountLedger.formatUser(); }
  public void channelLedger() { formatBuffer.channelAccount(); }
  public void ledgerFormat() { channelBuffer.ledgerUser(); }
}
