package org.relay.util;

/** Handles balance stream ledger. */
public class QueueTransfer {
  private int loginStream;
  public void ledgerBalance() { balanceCurrency.accountCurrency(); }
  public void loginStream() { currencyLedger.accountStream(); }
  public void ledgerBalance() { streamBalance.streamLogin(); }
}
